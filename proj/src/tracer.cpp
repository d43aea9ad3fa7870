#include "maxmod/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Dense>

#include "maxmod/angles.hpp"
#include "maxmod/classify.hpp"
#include "maxmod/error.hpp"

namespace maxmod {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kOnRayNoise = 1e-13;

struct Curve {
    int id = 0;
    std::vector<std::size_t> radius_index;
    std::vector<Maximizer> points;
    double drift = std::numeric_limits<double>::quiet_NaN();
};

// Local maximum of the profile near `guess`, searched within +/- width.
// Returns NaN when the window has no interior maximum.
double local_max_near(const CircleProfile& f, double guess, double width) {
    constexpr int kSamples = 64;
    double best_x = guess;
    double best_v = -std::numeric_limits<double>::infinity();
    int best_i = -1;
    for (int i = 0; i <= kSamples; ++i) {
        const double x = guess - width + 2.0 * width * i / kSamples;
        const double v = f.value(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
            best_i = i;
        }
    }
    if (best_i == 0 || best_i == kSamples) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const double h = 2.0 * width / kSamples;
    double lo = best_x - h;
    double hi = best_x + h;
    for (int it = 0; it < 200 && hi - lo > 4.0 * kEps; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f.derivative(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Follows a lost (or gained) local maximum for a few radii away from the
// event and checks that its deficit against the global maximum, relative to
// the spread, grows monotonically.
bool deficit_monotone(const ModulusExpansion& e, const std::vector<double>& radii,
                      const std::vector<std::vector<Maximizer>>& maxima, std::size_t start, int direction,
                      double theta, int k, const TraceConfig& cfg) {
    constexpr int kFollow = 5;
    double previous = 0.0;
    int followed = 0;
    for (int s = 0; s < kFollow; ++s) {
        const auto idx = static_cast<std::ptrdiff_t>(start) + direction * s;
        if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(radii.size())) {
            break;
        }
        const auto i = static_cast<std::size_t>(idx);
        const CircleProfile f(e, radii[i]);
        const double x = local_max_near(f, theta, kPi / (2.0 * k));
        if (std::isnan(x)) {
            return true;  // the local maximum itself has disappeared
        }
        const double spread = std::max(f.scale(0), std::numeric_limits<double>::min());
        const double deficit = (maxima[i].front().value - f.value(x)) / spread;
        if (deficit < -cfg.tie_tol || deficit < previous - cfg.tie_tol) {
            return false;
        }
        previous = deficit;
        theta = x;
        ++followed;
    }
    return followed > 0;
}

std::vector<Curve> link_curves(const std::vector<std::vector<Maximizer>>& maxima, int k, const TraceConfig& cfg,
                               std::vector<TopologyEvent>& events, const std::vector<double>& radii) {
    std::vector<Curve> curves;
    std::vector<std::size_t> active;
    int next_id = 0;
    const double floor_tol = kTwoPi / cfg.grid;
    const double initial_tol = kPi / k;

    for (std::size_t i = 0; i < maxima.size(); ++i) {
        const auto& cand = maxima[i];
        std::vector<bool> used(cand.size(), false);
        std::vector<std::size_t> still_active;

        if (i > 0) {
            double drift = 0.0;
            bool known = false;
            for (std::size_t c : active) {
                if (!std::isnan(curves[c].drift)) {
                    drift = std::max(drift, curves[c].drift);
                    known = true;
                }
            }
            const double tol = known ? std::max(cfg.link_factor * drift, floor_tol) : initial_tol;

            struct Pair {
                double distance;
                std::size_t curve;
                std::size_t candidate;
            };
            std::vector<Pair> pairs;
            for (std::size_t c : active) {
                for (std::size_t m = 0; m < cand.size(); ++m) {
                    const double d = angular_distance(curves[c].points.back().theta, cand[m].theta);
                    if (d < tol) {
                        pairs.push_back({d, c, m});
                    }
                }
            }
            std::sort(pairs.begin(), pairs.end(), [](const Pair& u, const Pair& v) {
                return u.distance < v.distance || (u.distance == v.distance && u.curve < v.curve);
            });
            std::vector<bool> matched(curves.size(), false);
            for (const auto& p : pairs) {
                if (matched[p.curve] || used[p.candidate]) {
                    continue;
                }
                matched[p.curve] = true;
                used[p.candidate] = true;
                auto& curve = curves[p.curve];
                curve.drift = p.distance;
                curve.points.push_back(cand[p.candidate]);
                curve.radius_index.push_back(i);
            }
            for (std::size_t c : active) {
                if (matched[c]) {
                    still_active.push_back(c);
                } else {
                    events.push_back({TopologyEvent::Kind::Death, radii[i], curves[c].id, false});
                }
            }
        }
        for (std::size_t m = 0; m < cand.size(); ++m) {
            if (used[m]) {
                continue;
            }
            Curve curve;
            curve.id = next_id++;
            curve.points.push_back(cand[m]);
            curve.radius_index.push_back(i);
            if (i > 0) {
                events.push_back({TopologyEvent::Kind::Birth, radii[i], curve.id, false});
            }
            still_active.push_back(curves.size());
            curves.push_back(std::move(curve));
        }
        active = std::move(still_active);
    }
    return curves;
}

// Least squares theta = omega + c1 r + c2 r^2 + c3 r^3 (theta(r) is analytic
// in r near the origin); omega is the intercept. Columns are scaled by the
// largest radius for conditioning.
double extrapolate_to_origin(const std::vector<double>& r, const std::vector<double>& theta) {
    const auto n = static_cast<Eigen::Index>(r.size());
    const Eigen::Index degree = std::min<Eigen::Index>(3, n - 2);
    const double scale = *std::max_element(r.begin(), r.end());
    Eigen::MatrixXd A(n, degree + 1);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = r[static_cast<std::size_t>(i)] / scale;
        double p = 1.0;
        for (Eigen::Index d = 0; d <= degree; ++d) {
            A(i, d) = p;
            p *= x;
        }
        b(i) = theta[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
    return coef(0);
}

Tangent fit_tangent(const std::vector<CurveSample>& samples, const std::vector<double>& omega, double r_min) {
    Tangent t;
    t.curve_id = samples.front().curve_id;
    // Smallest decade, or the smallest quarter of the curve if the decade is too sparse.
    std::vector<CurveSample> window;
    for (const auto& s : samples) {
        if (s.r <= 10.0 * r_min) {
            window.push_back(s);
        }
    }
    if (window.size() < 8) {
        const std::size_t want = std::max<std::size_t>(std::min<std::size_t>(8, samples.size()), samples.size() / 4);
        window.assign(samples.end() - static_cast<std::ptrdiff_t>(want), samples.end());
    }
    if (window.size() < 3) {
        return t;
    }
    // Unwrap against the innermost sample.
    const double anchor = window.back().theta;
    std::vector<double> r;
    std::vector<double> theta;
    for (const auto& s : window) {
        r.push_back(s.r);
        theta.push_back(anchor + wrap_angle(s.theta - anchor));
    }
    double max_dev = 0.0;
    for (double x : theta) {
        max_dev = std::max(max_dev, std::abs(x - anchor));
    }
    t.fitted = true;
    if (max_dev <= kOnRayNoise) {
        t.on_ray = true;
        t.omega_hat = wrap_angle(anchor);
        t.alpha_hat = std::numeric_limits<double>::infinity();
    } else {
        t.omega_hat = extrapolate_to_origin(r, theta);
        Eigen::Index used = 0;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double dev = std::abs(theta[i] - t.omega_hat);
            if (dev <= 1e-12) {
                continue;
            }
            const double x = std::log(r[i]);
            const double y = std::log(dev);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++used;
        }
        if (used < 3) {
            t.on_ray = true;
            t.alpha_hat = std::numeric_limits<double>::infinity();
        } else {
            const double nu = static_cast<double>(used);
            t.alpha_hat = (nu * sxy - sx * sy) / (nu * sxx - sx * sx);
        }
        t.omega_hat = wrap_angle(t.omega_hat);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < omega.size(); ++j) {
        const double d = angular_distance(t.omega_hat, omega[j]);
        if (d < best) {
            best = d;
            t.matched_j = static_cast<int>(j);
            t.matched_omega = omega[j];
        }
    }
    t.deviation = best;
    return t;
}

}  // namespace

std::vector<CurveSample> TraceResult::curve(int id) const {
    std::vector<CurveSample> out;
    for (const auto& s : samples) {
        if (s.curve_id == id) {
            out.push_back(s);
        }
    }
    return out;
}

std::vector<double> radius_schedule(double r_min, double r_max, int n) {
    std::vector<double> radii(static_cast<std::size_t>(n));
    const double ratio = std::log(r_min / r_max);
    for (int i = 0; i < n; ++i) {
        radii[static_cast<std::size_t>(i)] = r_max * std::exp(ratio * i / (n - 1));
    }
    radii.front() = r_max;
    radii.back() = r_min;
    return radii;
}

double numerical_floor(const HaymanForm& h) {
    double l1 = 0.0;
    for (const auto& c : h.tail.coeffs()) {
        l1 += std::abs(c);
    }
    const double rhs = 1e6 * kEps * l1 * l1;
    return std::pow(rhs / (2.0 * std::abs(h.a)), 1.0 / h.k);
}

TraceResult trace(const Polynomial& p, const TraceConfig& cfg) {
    cfg.validate();
    if (p.truncated_series()) {
        throw Error(ErrorKind::TruncatedSeries, "tracing needs a genuine polynomial, not a truncated series");
    }
    const HaymanForm h = hayman_form(p);
    const double floor = numerical_floor(h);
    if (cfg.r_min < floor) {
        throw FloorViolation(cfg.r_min, floor);
    }

    TraceResult out;
    out.k = h.k;
    out.mu = inner_degree(h);
    out.omega = omega_angles(h);
    out.radii = radius_schedule(cfg.r_min, cfg.r_max, cfg.n_radii);
    out.grid_used = cfg.grid;

    const ModulusExpansion e = expand(h.tail);
    const auto maxima = cfg.parallel ? kernels::argmax_schedule_parallel(e, out.radii, cfg)
                                     : kernels::argmax_schedule_serial(e, out.radii, cfg);

    auto curves = link_curves(maxima, h.k, cfg, out.events, out.radii);
    for (auto& ev : out.events) {
        const auto& curve = *std::find_if(curves.begin(), curves.end(), [&](const Curve& c) { return c.id == ev.curve_id; });
        const std::size_t at = static_cast<std::size_t>(
            std::find(out.radii.begin(), out.radii.end(), ev.radius) - out.radii.begin());
        if (ev.kind == TopologyEvent::Kind::Death) {
            ev.legitimate = deficit_monotone(e, out.radii, maxima, at, +1, curve.points.back().theta, h.k, cfg);
        } else {
            ev.legitimate = deficit_monotone(e, out.radii, maxima, at - 1, -1, curve.points.front().theta, h.k, cfg);
        }
    }

    out.n_curves = static_cast<int>(curves.size());
    const std::size_t last = out.radii.size() - 1;
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.points.size(); ++i) {
            out.samples.push_back({out.radii[c.radius_index[i]], c.points[i].theta, c.points[i].mod2, c.id});
        }
        if (c.radius_index.back() == last) {
            out.surviving.push_back(c.id);
        }
    }
    out.n_components = static_cast<int>(out.surviving.size());

    out.stable_below_radius = out.radii.front();
    for (const auto& ev : out.events) {
        const auto at = std::find(out.radii.begin(), out.radii.end(), ev.radius) - out.radii.begin();
        out.stable_below_radius = std::min(out.stable_below_radius, out.radii[static_cast<std::size_t>(at)]);
    }

    for (int id : out.surviving) {
        out.tangents.push_back(fit_tangent(out.curve(id), out.omega, cfg.r_min));
    }

    if (out.mu > 1) {
        std::map<int, std::vector<CurveSample>> by_id;
        for (int id : out.surviving) {
            by_id[id] = out.curve(id);
        }
        for (int id : out.surviving) {
            const auto& base = by_id[id];
            for (int m = 1; m < out.mu; ++m) {
                const double rot = kTwoPi * m / out.mu;
                int image = -1;
                double best = std::numeric_limits<double>::infinity();
                for (int other : out.surviving) {
                    const double d = angular_distance(by_id[other].back().theta, base.back().theta + rot);
                    if (d < best) {
                        best = d;
                        image = other;
                    }
                }
                SymmetryPair pair{id, image, m, 0.0};
                const auto& img = by_id[image];
                for (const auto& s : base) {
                    const auto it = std::find_if(img.begin(), img.end(), [&](const CurveSample& q) { return q.r == s.r; });
                    if (it == img.end()) {
                        pair.max_deviation = std::numeric_limits<double>::infinity();
                        continue;
                    }
                    pair.max_deviation = std::max(pair.max_deviation, angular_distance(it->theta, s.theta + rot));
                }
                out.symmetry.push_back(pair);
            }
        }
    }
    return out;
}

TraceResult trace_at_infinity(const Polynomial& p, const TraceConfig& cfg) {
    const auto q = reciprocal(p);
    auto normalized = normalize(q);
    if (std::holds_alternative<MonomialVerdict>(normalized)) {
        throw Error(ErrorKind::MonomialAllPlane, "c z^n attains its maximum modulus everywhere");
    }
    auto result = trace(std::get<HaymanForm>(normalized).tail, cfg);
    result.at_infinity = true;
    return result;
}

}  // namespace maxmod
