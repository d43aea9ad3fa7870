#include "maxmod/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "maxmod/error.hpp"

namespace maxmod {

std::string format_double(double x) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return buf.data();
}

namespace {

void dump_to(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                out += Json(key).dump();
                out += ':';
                dump_to(value, out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) {
                    out += ',';
                }
                dump_to(j[i], out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                break;
            }
            std::string s = format_double(x);
            if (s.find_first_of(".e") == std::string::npos) {
                s += ".0";
            }
            out += s;
            break;
        }
        default:
            out += j.dump();
    }
}

Json nullable(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

std::string canonical_dump(const Json& j) {
    std::string out;
    dump_to(j, out);
    return out;
}

Polynomial polynomial_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array()) {
        throw ParseError("coeffs", 0, "expected an object with a \"coeffs\" array");
    }
    std::vector<Complex> coeffs;
    std::size_t index = 0;
    for (const auto& c : j["coeffs"]) {
        if (c.is_number()) {
            coeffs.emplace_back(c.get<double>(), 0.0);
        } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
            coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
        } else {
            throw ParseError(c.dump(), index, "coefficient must be [re, im]");
        }
        ++index;
    }
    const bool truncated = j.value("truncated", false);
    return Polynomial(std::move(coeffs), truncated);
}

Json polynomial_to_json(const Polynomial& p) {
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs()) {
        coeffs.push_back(Json::array({c.real(), c.imag()}));
    }
    Json j{{"coeffs", coeffs}};
    if (p.truncated_series()) {
        j["truncated"] = true;
    }
    return j;
}

Json to_json(const ExceptionalWitness& w) {
    return {{"m", w.m}, {"m_prime", w.m_prime}, {"sigma", w.sigma}, {"residual", w.residual}};
}

Json to_json(const PredictedJ& j) {
    Json history = Json::array();
    for (const auto& s : j.t_history) {
        history.push_back({{"n", s.n}, {"j", s.j}, {"t", s.t}, {"retained", s.retained}});
    }
    return {{"J", j.j_set}, {"validity", std::string(to_string(j.validity))}, {"t_history", history}};
}

Json to_json(const Classification& c) {
    Json witnesses = Json::array();
    for (const auto& w : c.witnesses) {
        witnesses.push_back(to_json(w));
    }
    Json predicted = c.predicted_count.exact()
                         ? Json(c.predicted_count.min)
                         : Json::array({c.predicted_count.min, c.predicted_count.max});
    return {
        {"mu", c.mu},
        {"N", c.N},
        {"omega", c.omega},
        {"exceptional", c.exceptional},
        {"witnesses", witnesses},
        {"magic", std::string(to_string(c.magic))},
        {"predicted_count", predicted},
        {"conjecture_count", c.conjecture_count ? Json(*c.conjecture_count) : Json(nullptr)},
        {"warnings", c.warnings},
    };
}

Json trace_summary_json(const TraceResult& t) {
    Json tangents = Json::array();
    for (const auto& tg : t.tangents) {
        tangents.push_back({{"curve_id", tg.curve_id},
                            {"fitted", tg.fitted},
                            {"on_ray", tg.on_ray},
                            {"omega_hat", tg.omega_hat},
                            {"alpha_hat", nullable(tg.alpha_hat)},
                            {"matched_j", tg.matched_j},
                            {"matched_omega", tg.matched_omega},
                            {"deviation", tg.deviation}});
    }
    Json events = Json::array();
    for (const auto& ev : t.events) {
        events.push_back({{"kind", ev.kind == TopologyEvent::Kind::Birth ? "birth" : "death"},
                          {"radius", ev.radius},
                          {"curve_id", ev.curve_id},
                          {"legitimate", ev.legitimate}});
    }
    Json symmetry = Json::array();
    for (const auto& s : t.symmetry) {
        symmetry.push_back(
            {{"curve", s.curve}, {"image", s.image}, {"m", s.m}, {"max_deviation", nullable(s.max_deviation)}});
    }
    return {
        {"n_components", t.n_components},
        {"n_curves", t.n_curves},
        {"surviving", t.surviving},
        {"tangents", tangents},
        {"events", events},
        {"symmetry", symmetry},
        {"stable_below_radius", t.stable_below_radius},
        {"at_infinity", t.at_infinity},
        {"r_max", t.radii.front()},
        {"r_min", t.radii.back()},
        {"n_radii", t.radii.size()},
    };
}

void write_csv(std::ostream& out, const TraceResult& t) {
    auto rows = t.samples;
    std::stable_sort(rows.begin(), rows.end(), [](const CurveSample& u, const CurveSample& v) {
        return u.curve_id < v.curve_id || (u.curve_id == v.curve_id && u.r > v.r);
    });
    out << "r,theta,re,im,mod,curve_id\n";
    for (const auto& s : rows) {
        out << format_double(s.r) << ',' << format_double(s.theta) << ',' << format_double(s.r * std::cos(s.theta))
            << ',' << format_double(s.r * std::sin(s.theta)) << ',' << format_double(std::sqrt(s.mod2)) << ','
            << s.curve_id << '\n';
    }
}

void write_svg(std::ostream& out, const TraceResult& t) {
    static constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                            "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    const double r_max = t.radii.front();
    const double half = 1.1 * r_max;
    const double stroke = half / 250.0;
    auto fmt = [](double x) {
        std::array<char, 32> buf{};
        std::snprintf(buf.data(), buf.size(), "%.6g", x);
        return std::string(buf.data());
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"" << fmt(-half) << ' '
        << fmt(-half) << ' ' << fmt(2 * half) << ' ' << fmt(2 * half) << "\">\n";
    out << "<rect x=\"" << fmt(-half) << "\" y=\"" << fmt(-half) << "\" width=\"" << fmt(2 * half) << "\" height=\""
        << fmt(2 * half) << "\" fill=\"white\"/>\n";
    out << "<g stroke=\"#888888\" stroke-width=\"" << fmt(stroke / 2) << "\">\n";
    out << "<line x1=\"" << fmt(-r_max) << "\" y1=\"0\" x2=\"" << fmt(r_max) << "\" y2=\"0\"/>\n";
    out << "<line x1=\"0\" y1=\"" << fmt(-r_max) << "\" x2=\"0\" y2=\"" << fmt(r_max) << "\"/>\n";
    const double tick = half / 60.0;
    for (int i = -2; i <= 2; ++i) {
        if (i == 0) {
            continue;
        }
        const double x = r_max * i / 2.0;
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(-tick) << "\" x2=\"" << fmt(x) << "\" y2=\"" << fmt(tick)
            << "\"/>\n";
        out << "<line x1=\"" << fmt(-tick) << "\" y1=\"" << fmt(x) << "\" x2=\"" << fmt(tick) << "\" y2=\"" << fmt(x)
            << "\"/>\n";
    }
    out << "</g>\n";
    out << "<g font-size=\"" << fmt(half / 30.0) << "\" fill=\"#444444\" text-anchor=\"middle\">\n";
    for (int i = -2; i <= 2; ++i) {
        if (i == 0) {
            continue;
        }
        const double x = r_max * i / 2.0;
        out << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(4 * tick) << "\">" << fmt(x) << "</text>\n";
        out << "<text x=\"" << fmt(-4 * tick) << "\" y=\"" << fmt(-x) << "\">" << fmt(x) << "</text>\n";
    }
    out << "</g>\n";

    // SVG's y axis points down; flip so that Im z points up.
    out << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << fmt(stroke) << "\">\n";
    for (int id = 0; id < t.n_curves; ++id) {
        const auto pts = t.curve(id);
        if (pts.empty()) {
            continue;
        }
        const bool survives = std::find(t.surviving.begin(), t.surviving.end(), id) != t.surviving.end();
        const char* color = kPalette[static_cast<std::size_t>(id) % kPalette.size()];
        if (survives) {
            out << "<path stroke=\"" << color << "\" d=\"";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                out << (i == 0 ? "M" : " L") << fmt(pts[i].r * std::cos(pts[i].theta)) << ' '
                    << fmt(pts[i].r * std::sin(pts[i].theta));
            }
            out << "\"/>\n";
        } else {
            out << "<polyline stroke=\"" << color << "\" stroke-dasharray=\"" << fmt(4 * stroke) << "\" points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                out << (i == 0 ? "" : " ") << fmt(pts[i].r * std::cos(pts[i].theta)) << ','
                    << fmt(pts[i].r * std::sin(pts[i].theta));
            }
            out << "\"/>\n";
        }
    }
    out << "</g>\n</svg>\n";
}

}  // namespace maxmod
