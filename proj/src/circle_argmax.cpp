#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include <omp.h>

#include "maxmod/angles.hpp"
#include "maxmod/error.hpp"
#include "maxmod/tracer.hpp"

namespace maxmod {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double grid_angle(std::size_t i, std::size_t grid) {
    return kTwoPi * static_cast<double>(i) / static_cast<double>(grid);
}

// Root of the derivative inside [lo, hi] with derivative(lo) > 0 > derivative(hi):
// Newton, falling back to bisection whenever a step leaves the bracket.
double refine_bracketed(const CircleProfile& f, double lo, double hi, double seed,
                        const TraceConfig& cfg, bool& converged) {
    const double floor = 4.0 * kEps * f.scale(1);
    double x = seed;
    double d = f.derivative(x);
    converged = false;
    for (int iter = 0; iter < cfg.newton_max_iter; ++iter) {
        if (std::abs(d) <= floor) {
            converged = true;
            break;
        }
        if (d > 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        if (hi - lo <= 4.0 * kEps * std::max(1.0, std::abs(x))) {
            converged = true;
            break;
        }
        const double d2 = f.second_derivative(x);
        double next = d2 < 0.0 ? x - d / d2 : lo - 1.0;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        const double step = next - x;
        x = next;
        d = f.derivative(x);
        if (std::abs(step) <= 2.0 * kEps * std::max(1.0, std::abs(x))) {
            converged = true;
            break;
        }
    }
    return x;
}

// Locates a +/- sign change of the derivative near a grid maximum and refines it.
double refine_seed(const CircleProfile& f, double theta, double step, const TraceConfig& cfg) {
    double lo = theta - step;
    double hi = theta + step;
    bool converged = false;
    if (f.derivative(lo) > 0.0 && f.derivative(hi) < 0.0) {
        const double x = refine_bracketed(f, lo, hi, theta, cfg, converged);
        if (converged) {
            return x;
        }
        throw RefinementFailure(f.radius(), wrap_angle(theta));
    }
    // Endpoint signs are inconclusive: subdivide and take the sign change
    // closest to the seed.
    constexpr int kSub = 32;
    double best = std::numeric_limits<double>::quiet_NaN();
    double prev_x = lo;
    double prev_d = f.derivative(lo);
    for (int i = 1; i <= kSub; ++i) {
        const double xi = lo + (hi - lo) * i / kSub;
        const double di = f.derivative(xi);
        if (prev_d > 0.0 && di <= 0.0) {
            if (di == 0.0) {
                converged = true;
                if (std::isnan(best) || std::abs(xi - theta) < std::abs(best - theta)) {
                    best = xi;
                }
            } else {
                const double x = refine_bracketed(f, prev_x, xi, 0.5 * (prev_x + xi), cfg, converged);
                if (converged && (std::isnan(best) || std::abs(x - theta) < std::abs(best - theta))) {
                    best = x;
                }
            }
        }
        prev_x = xi;
        prev_d = di;
    }
    if (std::isnan(best)) {
        if (std::abs(f.derivative(theta)) <= cfg.newton_tol * f.scale(1)) {
            return theta;
        }
        throw RefinementFailure(f.radius(), wrap_angle(theta));
    }
    return best;
}

std::vector<std::size_t> grid_local_maxima(std::span<const double> v) {
    std::vector<std::size_t> seeds;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double left = v[(i + n - 1) % n];
        const double right = v[(i + 1) % n];
        if (v[i] > left && v[i] >= right) {
            seeds.push_back(i);
        }
    }
    return seeds;
}

bool seeds_crowded(const std::vector<std::size_t>& seeds, std::size_t grid) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const std::size_t next = seeds[(i + 1) % seeds.size()];
        const std::size_t gap = (next + grid - seeds[i]) % grid;
        if (seeds.size() > 1 && gap <= 3) {
            return true;
        }
    }
    return false;
}

std::vector<Maximizer> circle_argmax_serial(const ModulusExpansion& e, double r, const TraceConfig& cfg) {
    const CircleProfile f(e, r);
    std::size_t grid = static_cast<std::size_t>(cfg.grid);
    std::vector<double> values;
    std::vector<std::size_t> seeds;
    while (true) {
        values.assign(grid, 0.0);
        kernels::scan_circle_serial(f, values);
        seeds = grid_local_maxima(values);
        if (!seeds_crowded(seeds, grid) || grid >= static_cast<std::size_t>(cfg.max_grid)) {
            break;
        }
        grid *= 2;
    }
    const double step = kTwoPi / static_cast<double>(grid);

    std::vector<Maximizer> refined;
    refined.reserve(seeds.size());
    for (std::size_t s : seeds) {
        const double x = wrap_angle(refine_seed(f, grid_angle(s, grid), step, cfg));
        Maximizer m;
        m.theta = x;
        m.value = f.value(x);
        m.mod2 = f.baseline() + m.value;
        m.derivative = f.derivative(x);
        m.second_derivative = f.second_derivative(x);
        refined.push_back(m);
    }

    const auto [gmin, gmax] = std::minmax_element(values.begin(), values.end());
    double top = *gmax;
    for (const auto& m : refined) {
        top = std::max(top, m.value);
    }
    const double spread = top - *gmin;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& m : refined) {
        best = std::max(best, m.value);
    }
    std::vector<Maximizer> kept;
    for (const auto& m : refined) {
        if (m.value >= best - cfg.tie_tol * spread) {
            kept.push_back(m);
        }
    }
    std::sort(kept.begin(), kept.end(), [](const Maximizer& u, const Maximizer& v) { return u.theta < v.theta; });

    const double merge = kTwoPi / (8.0 * static_cast<double>(grid));
    std::vector<Maximizer> merged;
    for (const auto& m : kept) {
        bool dup = false;
        for (auto& q : merged) {
            if (angular_distance(q.theta, m.theta) < merge) {
                if (m.value > q.value) {
                    q = m;
                }
                dup = true;
                break;
            }
        }
        if (!dup) {
            merged.push_back(m);
        }
    }
    return merged;
}

}  // namespace

void TraceConfig::validate() const {
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw Error(ErrorKind::InvalidConfig, "need 0 < r_min < r_max");
    }
    if (n_radii < 2) {
        throw Error(ErrorKind::InvalidConfig, "n_radii must be at least 2");
    }
    if (grid < 64 || max_grid < grid) {
        throw Error(ErrorKind::InvalidConfig, "grid must be at least 64 and not exceed max_grid");
    }
    if (!(tie_tol > 0.0) || !(newton_tol > 0.0) || newton_max_iter < 1 || !(link_factor > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "tolerances must be positive");
    }
}

std::vector<Maximizer> circle_argmax(const ModulusExpansion& e, double r, const TraceConfig& cfg) {
    if (!(r > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "circle_argmax needs r > 0");
    }
    return circle_argmax_serial(e, r, cfg);
}

std::vector<double> brute_force_mset(const Polynomial& p, double r, int grid, double tol, double tie_tol) {
    const CircleProfile f(expand(p), r);
    std::vector<double> values(static_cast<std::size_t>(grid));
    kernels::scan_circle_parallel(f, values);
    const auto [gmin, gmax] = std::minmax_element(values.begin(), values.end());
    if (tol < 0.0) {
        const double h = kPi / grid;
        tol = f.scale(2) * h * h + tie_tol * (*gmax - *gmin);
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= *gmax - tol) {
            out.push_back(wrap_angle(grid_angle(i, values.size())));
        }
    }
    return out;
}

std::vector<GridCluster> cluster_grid_angles(const std::vector<double>& thetas, int grid) {
    std::vector<double> sorted = thetas;
    std::sort(sorted.begin(), sorted.end());
    const double step = kTwoPi / grid;
    std::vector<GridCluster> clusters;
    for (double t : sorted) {
        if (!clusters.empty() && t - clusters.back().last < 1.5 * step) {
            clusters.back().last = t;
            clusters.back().members.push_back(t);
        } else {
            clusters.push_back({t, t, {t}});
        }
    }
    // The first and last runs may be one run across the branch cut.
    if (clusters.size() > 1 && angular_distance(clusters.back().last, clusters.front().first) < 1.5 * step) {
        auto& tail = clusters.back();
        tail.members.insert(tail.members.end(), clusters.front().members.begin(), clusters.front().members.end());
        tail.last = clusters.front().last;
        clusters.erase(clusters.begin());
    }
    return clusters;
}

namespace kernels {

void scan_circle_serial(const CircleProfile& profile, std::span<double> values) {
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = profile.value(grid_angle(i, n));
    }
}

void scan_circle_parallel(const CircleProfile& profile, std::span<double> values) {
    const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        values[static_cast<std::size_t>(i)] =
            profile.value(grid_angle(static_cast<std::size_t>(i), static_cast<std::size_t>(n)));
    }
}

std::vector<std::vector<Maximizer>> argmax_schedule_serial(const ModulusExpansion& e,
                                                           std::span<const double> radii,
                                                           const TraceConfig& cfg) {
    std::vector<std::vector<Maximizer>> out;
    out.reserve(radii.size());
    for (double r : radii) {
        out.push_back(circle_argmax_serial(e, r, cfg));
    }
    return out;
}

std::vector<std::vector<Maximizer>> argmax_schedule_parallel(const ModulusExpansion& e,
                                                             std::span<const double> radii,
                                                             const TraceConfig& cfg) {
    const auto n = static_cast<std::ptrdiff_t>(radii.size());
    std::vector<std::vector<Maximizer>> out(radii.size());
    std::vector<std::exception_ptr> failures(radii.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            out[idx] = circle_argmax_serial(e, radii[idx], cfg);
        } catch (...) {
            failures[idx] = std::current_exception();
        }
    }
    for (const auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    return out;
}

}  // namespace kernels

void set_max_threads(int n) {
    if (n > 0) {
        omp_set_num_threads(n);
    }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace maxmod
