#pragma once

#include <span>
#include <vector>

#include "maxmod/modulus.hpp"
#include "maxmod/polynomial.hpp"

namespace maxmod {

struct TraceConfig {
    double r_min = 1e-3;
    double r_max = 0.3;
    int n_radii = 200;        // geometric schedule, r_max down to r_min
    int grid = 4096;          // initial theta samples per circle
    int max_grid = 1 << 16;   // adaptive refinement cap
    double tie_tol = 1e-12;   // co-maximality, relative to the circle's spread of |p|^2
    double newton_tol = 1e-10;  // |d/dtheta|, relative to sum |c_t| f_t on the circle
    int newton_max_iter = 100;
    double link_factor = 3.0;   // link tolerance = factor * largest per-step drift
    bool parallel = true;       // OpenMP over radii

    /// Throws InvalidConfig.
    void validate() const;
};

struct Maximizer {
    double theta = 0.0;       // (-pi, pi]
    double value = 0.0;       // theta-dependent part of |p|^2
    double mod2 = 0.0;
    double derivative = 0.0;
    double second_derivative = 0.0;
};

/// All global maximisers of theta -> |p(r e^{i theta})|^2, sorted by theta.
/// Throws RefinementFailure.
std::vector<Maximizer> circle_argmax(const ModulusExpansion& e, double r, const TraceConfig& cfg = {});

/// Dense-scan oracle: grid angles whose value is within `tol` of the grid
/// maximum. tol < 0 selects the discretisation bound S2 (pi/grid)^2 plus
/// tie_tol times the spread.
std::vector<double> brute_force_mset(const Polynomial& p, double r, int grid, double tol = -1.0,
                                     double tie_tol = 1e-12);

/// Groups brute_force_mset output into runs of cyclically adjacent grid points.
struct GridCluster {
    double first = 0.0;
    double last = 0.0;
    std::vector<double> members;
};
std::vector<GridCluster> cluster_grid_angles(const std::vector<double>& thetas, int grid);

struct CurveSample {
    double r = 0.0;
    double theta = 0.0;
    double mod2 = 0.0;
    int curve_id = 0;
};

struct Tangent {
    int curve_id = 0;
    bool fitted = false;
    bool on_ray = false;          // theta(r) constant to roundoff
    double omega_hat = 0.0;
    double alpha_hat = 0.0;       // +inf when on_ray
    int matched_j = -1;
    double matched_omega = 0.0;
    double deviation = 0.0;       // |omega_hat - matched_omega| on the circle
};

struct SymmetryPair {
    int curve = 0;
    int image = 0;
    int m = 0;                    // rotation by 2 pi m / mu
    double max_deviation = 0.0;
};

struct TopologyEvent {
    enum class Kind { Birth, Death };
    Kind kind = Kind::Birth;
    double radius = 0.0;
    int curve_id = 0;
    bool legitimate = false;      // the lost/gained local max has a monotone deficit
};

struct TraceResult {
    int k = 0;
    int mu = 0;
    std::vector<double> omega;
    std::vector<double> radii;           // descending
    std::vector<CurveSample> samples;    // sorted by (curve_id, descending r)
    int n_curves = 0;
    std::vector<int> surviving;          // curve ids present at r_min
    int n_components = 0;
    std::vector<Tangent> tangents;       // one per surviving curve
    std::vector<SymmetryPair> symmetry;
    std::vector<TopologyEvent> events;
    double stable_below_radius = 0.0;    // largest radius from which the final count holds
    bool at_infinity = false;            // samples live in the 1/z plane
    int grid_used = 0;

    std::vector<CurveSample> curve(int id) const;
};

/// Smallest admissible r_min: 2|a| r^k >= 1e6 eps (sum |a_l|)^2 for the
/// normalised tail.
double numerical_floor(const HaymanForm& h);

/// Traces the maximum modulus set of p over the radius schedule.
/// Throws MonomialAllPlane, TruncatedSeries, FloorViolation, RefinementFailure.
TraceResult trace(const Polynomial& p, const TraceConfig& cfg = {});

/// The structure near infinity: trace of the normalised reciprocal.
TraceResult trace_at_infinity(const Polynomial& p, const TraceConfig& cfg = {});

/// Geometric schedule r_max .. r_min, n points, endpoints exact.
std::vector<double> radius_schedule(double r_min, double r_max, int n);

namespace kernels {

/// values[i] = profile.value(2 pi i / values.size()).
void scan_circle_serial(const CircleProfile& profile, std::span<double> values);
void scan_circle_parallel(const CircleProfile& profile, std::span<double> values);

/// circle_argmax at every radius. The parallel variant is bitwise identical.
std::vector<std::vector<Maximizer>> argmax_schedule_serial(const ModulusExpansion& e,
                                                           std::span<const double> radii,
                                                           const TraceConfig& cfg);
std::vector<std::vector<Maximizer>> argmax_schedule_parallel(const ModulusExpansion& e,
                                                             std::span<const double> radii,
                                                             const TraceConfig& cfg);

}  // namespace kernels

/// Caps OpenMP parallelism; n <= 0 leaves the runtime default.
void set_max_threads(int n);
int max_threads();

}  // namespace maxmod
