#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "maxmod/classify.hpp"
#include "maxmod/error.hpp"
#include "maxmod/hunt.hpp"
#include "maxmod/io.hpp"
#include "maxmod/report.hpp"
#include "maxmod/tracer.hpp"

namespace {

using namespace maxmod;

enum Exit : int {
    kOk = 0,
    kFailure = 1,
    kBadPolynomial = 2,
    kMonomial = 3,
    kDiscrepant = 4,
    kFloor = 5,
    kIo = 6,
};

struct Options {
    std::string poly;
    std::string poly_file;
    bool quiet = false;

    double r_min = 1e-3;
    double r_max = 0.3;
    int radii = 200;
    int grid = 4096;
    std::string csv;
    std::string svg;
    bool infinity = false;

    std::string family = "cubic";
    int samples = 100;
    std::uint64_t seed = 1;
    std::string out;
    bool append = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Polynomial load_polynomial(const Options& o) {
    if (!o.poly.empty() && !o.poly_file.empty()) {
        throw Error(ErrorKind::InvalidConfig, "give either --poly or --poly-file, not both");
    }
    if (!o.poly_file.empty()) {
        const auto text = read_file(o.poly_file);
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            try {
                return polynomial_from_json(Json::parse(text));
            } catch (const Json::exception& e) {
                throw ParseError(o.poly_file, 0, e.what());
            }
        }
        auto line = text;
        while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
            line.pop_back();
        }
        return parse_polynomial(line);
    }
    if (o.poly.empty()) {
        throw Error(ErrorKind::InvalidConfig, "--poly or --poly-file is required");
    }
    return parse_polynomial(o.poly);
}

void warn(const Options& o, const std::vector<std::string>& warnings) {
    if (o.quiet) {
        return;
    }
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << '\n';
    }
}

int cmd_classify(const Options& o) {
    const auto p = load_polynomial(o);
    const auto c = classify(p);
    warn(o, c.warnings);
    std::cout << canonical_dump(to_json(c)) << '\n';
    return kOk;
}

int cmd_trace(const Options& o) {
    const auto p = load_polynomial(o);
    TraceConfig cfg;
    cfg.r_min = o.r_min;
    cfg.r_max = o.r_max;
    cfg.n_radii = o.radii;
    cfg.grid = o.grid;
    cfg.max_grid = std::max(cfg.max_grid, o.grid);

    RunReport report;
    report.input = p;
    report.classification = classify(o.infinity ? reciprocal(p) : p);
    report.trace = o.infinity ? trace_at_infinity(p, cfg) : trace(p, cfg);
    report.verdict = agreement(report.classification, report.trace.n_components);
    warn(o, report.classification.warnings);

    if (!o.csv.empty()) {
        std::ofstream out(o.csv, std::ios::trunc);
        write_csv(out, report.trace);
        if (!out) {
            throw Error(ErrorKind::IoError, "cannot write " + o.csv);
        }
        report.csv_path = o.csv;
    }
    if (!o.svg.empty()) {
        std::ofstream out(o.svg, std::ios::trunc);
        write_svg(out, report.trace);
        if (!out) {
            throw Error(ErrorKind::IoError, "cannot write " + o.svg);
        }
        report.svg_path = o.svg;
    }
    std::cout << canonical_dump(to_json(report)) << '\n';
    if (!o.quiet) {
        std::cerr << report.trace.n_components << " component(s), " << to_string(report.verdict) << '\n';
    }
    return report.verdict == Agreement::Discrepant ? kDiscrepant : kOk;
}

int cmd_hunt(const Options& o) {
    HuntConfig cfg;
    cfg.family = parse_family(o.family);
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    if (cfg.samples < 0) {
        throw Error(ErrorKind::InvalidConfig, "--samples must be non-negative");
    }
    const auto findings = run_hunt(cfg);

    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out, o.append ? std::ios::app : std::ios::trunc);
        if (!file) {
            throw Error(ErrorKind::IoError, "cannot open " + o.out);
        }
    }
    std::ostream& out = o.out.empty() ? std::cout : file;
    int violations = 0;
    int exceptional = 0;
    for (const auto& f : findings) {
        out << canonical_dump(to_json(f)) << '\n';
        violations += !f.conjecture_holds;
        exceptional += f.exceptional;
    }
    out.flush();
    if (!out) {
        throw Error(ErrorKind::IoError, "write failed for " + (o.out.empty() ? std::string("stdout") : o.out));
    }
    if (!o.quiet) {
        std::cerr << findings.size() << " samples, " << exceptional << " exceptional, " << violations
                  << " conjecture violation(s)\n";
    }
    return violations == 0 ? kOk : kDiscrepant;
}

void print_error(const Error& e) {
    std::cout << canonical_dump(Json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}) << '\n';
    std::cerr << "error: " << e.what() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("MAXMOD_THREADS")) {
        set_max_threads(std::atoi(env));
    }

    Options o;
    CLI::App app{"Maximum modulus sets of complex polynomials near the origin"};
    app.require_subcommand(1);
    app.add_option("--poly", o.poly, "coefficients, ascending: \"1,0,1,1i\"")->group("Input");
    app.add_option("--poly-file", o.poly_file, "file with the text format or {\"coeffs\": [[re,im],...]}")
        ->group("Input");
    app.add_flag("-q,--quiet", o.quiet, "no warnings or summary on stderr");

    auto* classify_cmd = app.add_subcommand("classify", "coefficient-level classification");
    classify_cmd->fallthrough();

    auto* trace_cmd = app.add_subcommand("trace", "trace the maximum modulus set and compare with the prediction");
    trace_cmd->fallthrough();
    trace_cmd->add_option("--rmin", o.r_min, "smallest radius")->capture_default_str();
    trace_cmd->add_option("--rmax", o.r_max, "largest radius")->capture_default_str();
    trace_cmd->add_option("--radii", o.radii, "number of radii")->capture_default_str();
    trace_cmd->add_option("--grid", o.grid, "initial samples per circle")->capture_default_str();
    trace_cmd->add_option("--csv", o.csv, "write samples as CSV");
    trace_cmd->add_option("--svg", o.svg, "write a z-plane plot");
    trace_cmd->add_flag("--infinity", o.infinity, "trace near infinity via the reciprocal polynomial");

    auto* hunt_cmd = app.add_subcommand("hunt", "seeded search for counterexamples to the 2 mu conjecture");
    hunt_cmd->fallthrough();
    hunt_cmd->add_option("--family", o.family, "cubic or quartic")->capture_default_str();
    hunt_cmd->add_option("--samples", o.samples, "number of polynomials")->capture_default_str();
    hunt_cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
    hunt_cmd->add_option("--out", o.out, "findings file (JSON lines); stdout if omitted");
    hunt_cmd->add_flag("--append", o.append, "append to --out instead of replacing it");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kFailure;
    }

    try {
        if (*classify_cmd) {
            return cmd_classify(o);
        }
        if (*trace_cmd) {
            return cmd_trace(o);
        }
        return cmd_hunt(o);
    } catch (const FloorViolation& e) {
        print_error(e);
        std::cerr << "minimum admissible r_min: " << format_double(e.minimum()) << '\n';
        return kFloor;
    } catch (const Error& e) {
        print_error(e);
        switch (e.kind()) {
            case ErrorKind::ParseError:
            case ErrorKind::ZeroPolynomial:
                return kBadPolynomial;
            case ErrorKind::MonomialAllPlane:
                return kMonomial;
            case ErrorKind::IoError:
                return kIo;
            default:
                return kFailure;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
}
