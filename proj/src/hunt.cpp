#include "maxmod/hunt.hpp"

#include <algorithm>
#include <random>

#include "maxmod/angles.hpp"
#include "maxmod/error.hpp"

namespace maxmod {

namespace {

class CoefficientSampler {
public:
    explicit CoefficientSampler(std::uint64_t seed) : rng_(seed) {}

    Complex coefficient() {
        const double modulus = uniform(0.5, 2.0);
        return std::polar(modulus, angle());
    }
    double angle() { return uniform(-kPi, kPi); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p) { return uniform(0.0, 1.0) < p; }

private:
    std::mt19937_64 rng_;
};

// Sets arg b_sigma so that m pi = (k / sigma)(m' pi - arg b_sigma) + arg a.
Complex on_locus_coefficient(CoefficientSampler& s, Complex a, int k, int sigma) {
    const int m = s.integer(1, 2 * k - 3);
    const int m_prime = s.integer(-3, 3);
    const double modulus = s.uniform(0.5, 2.0);
    const double arg_b = m_prime * kPi - static_cast<double>(sigma) / k * (m * kPi - principal_arg(a));
    return std::polar(modulus, wrap_angle(arg_b));
}

}  // namespace

Family parse_family(std::string_view name) {
    if (name == "cubic") {
        return Family::Cubic;
    }
    if (name == "quartic") {
        return Family::Quartic;
    }
    throw Error(ErrorKind::InvalidConfig, "unknown family '" + std::string(name) + "'");
}

std::vector<HuntSample> generate_hunt_samples(const HuntConfig& cfg) {
    CoefficientSampler s(cfg.seed);
    std::vector<HuntSample> out;
    out.reserve(static_cast<std::size_t>(std::max(cfg.samples, 0)));
    for (int i = 0; i < cfg.samples; ++i) {
        const bool want_locus = s.coin(cfg.on_locus_fraction);
        std::vector<Complex> c;
        bool on_locus = false;
        if (cfg.family == Family::Cubic) {
            // 1 + a z^2 + b z^3: the only cubic shape that can be magic.
            const Complex a = s.coefficient();
            Complex b = s.coefficient();
            if (want_locus) {
                b = on_locus_coefficient(s, a, 2, 3);
                on_locus = true;
            }
            c = {1.0, 0.0, a, b};
        } else {
            const int k = s.integer(2, 3);
            const Complex a = s.coefficient();
            if (k == 3) {
                Complex b = s.coefficient();
                if (want_locus) {
                    b = on_locus_coefficient(s, a, 3, 4);
                    on_locus = true;
                }
                c = {1.0, 0.0, 0.0, a, b};
            } else {
                const bool sparse = s.coin(1.0 / 3.0);
                Complex b3 = sparse ? Complex{} : s.coefficient();
                const Complex b4 = s.coefficient();
                // With b3 = 0 the core is 1 + a z^2, which is never exceptional.
                if (want_locus && !sparse) {
                    b3 = on_locus_coefficient(s, a, 2, 3);
                    on_locus = true;
                }
                c = {1.0, 0.0, a, b3, b4};
            }
        }
        out.push_back({Polynomial(std::move(c)), on_locus});
    }
    return out;
}

HuntFinding examine(const HuntSample& s, const TraceConfig& trace_cfg) {
    HuntFinding f;
    f.p = s.p;
    f.on_locus = s.on_locus;
    try {
        const auto cls = classify(s.p);
        f.exceptional = cls.exceptional;
        f.magic = cls.magic;
        f.mu = cls.mu;
        TraceConfig cfg = trace_cfg;
        cfg.parallel = false;
        cfg.r_min = std::max(cfg.r_min, 2.0 * numerical_floor(hayman_form(s.p)));
        if (cfg.r_min >= cfg.r_max) {
            throw Error(ErrorKind::InvalidConfig, "numerical floor exceeds r_max");
        }
        const auto tr = trace(s.p, cfg);
        f.n_components = tr.n_components;
        f.conjecture_holds = f.n_components <= f.mu || f.n_components == 2 * f.mu;
    } catch (const Error& e) {
        f.error = e.what();
        f.conjecture_holds = false;
    }
    return f;
}

std::vector<HuntFinding> run_hunt(const HuntConfig& cfg) {
    const auto samples = generate_hunt_samples(cfg);
    std::vector<HuntFinding> findings(samples.size());
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        findings[static_cast<std::size_t>(i)] = examine(samples[static_cast<std::size_t>(i)], cfg.trace);
    }
    return findings;
}

Json to_json(const HuntFinding& f) {
    Json j{
        {"coeffs", polynomial_to_json(f.p)["coeffs"]},
        {"on_locus", f.on_locus},
        {"exceptional", f.exceptional},
        {"magic", std::string(to_string(f.magic))},
        {"mu", f.mu},
        {"n_components", f.n_components},
        {"conjecture_holds", f.conjecture_holds},
    };
    if (f.error) {
        j["error"] = *f.error;
    }
    return j;
}

}  // namespace maxmod
