#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxmod/polynomial.hpp"

namespace maxmod {

/// Thresholds for the exact-arithmetic tests done in doubles.
struct ClassifyTolerances {
    double eps_arg = 1e-9;    // |m' - round(m')| counted as an integer
    double warn_arg = 1e-6;   // residuals up to this trigger a near-exceptional warning
    double eps_t = 1e-9;      // tie threshold on t_j, relative to 2|b_n|
    double eps_mag = 1e-9;    // |Re(b a^{-3/2})| threshold, relative to |b| |a|^{-3/2}
};

struct ExceptionalWitness {
    int m = 0;
    long long m_prime = 0;
    int sigma = 0;
    double residual = 0.0;
};

struct ExceptionalResult {
    bool exceptional = false;
    std::vector<ExceptionalWitness> witnesses;
    /// Smallest |m' - round(m')| over the whole scan, +inf if the scan is empty.
    double min_residual = 0.0;
};

enum class Validity { Proven, Heuristic };
enum class MagicVerdict { NotMagic, Magic, Unknown };

std::string_view to_string(Validity v) noexcept;
std::string_view to_string(MagicVerdict v) noexcept;

struct TStep {
    int n = 0;                 // exponent of the appended term
    std::vector<int> j;        // candidates before filtering
    std::vector<double> t;     // t_j for those candidates
    std::vector<int> retained;
};

struct PredictedJ {
    std::vector<int> j_set;
    Validity validity = Validity::Heuristic;
    std::vector<TStep> t_history;
};

/// Closed range of admissible component counts, stepped by `step`.
struct PredictedCount {
    int min = 0;
    int max = 0;
    int step = 1;

    bool exact() const noexcept { return min == max; }
    bool contains(int n) const noexcept {
        return n >= min && n <= max && (n - min) % step == 0;
    }
};

struct Classification {
    int k = 0;
    Complex a;
    int mu = 0;
    int N = 0;
    std::vector<double> omega;
    bool exceptional = false;
    std::vector<ExceptionalWitness> witnesses;
    bool minimal = false;
    MagicVerdict magic = MagicVerdict::Unknown;
    PredictedCount predicted_count;
    std::optional<int> conjecture_count;
    PredictedJ predicted_j;
    std::vector<std::string> warnings;
};

/// Candidate tangent directions (2 j pi - arg a) / k, each in (-pi, pi].
std::vector<double> omega_angles(const HaymanForm& h);

/// The coefficient-argument resonance test over m in 1..2k-3 and the nonzero
/// b_sigma, k < sigma <= N, of the core polynomial.
ExceptionalResult is_exceptional(const HaymanForm& h, const ClassifyTolerances& tol = {});

/// Exact magic criterion for tails of degree <= 3. Throws NotCubicFamily for
/// anything of higher degree.
MagicVerdict cubic_magic(const HaymanForm& h, const ClassifyTolerances& tol = {});

/// Filters the candidate set Sigma = {0..k-1} one term at a time, keeping the
/// maximisers of t_j = 2|b_n| cos(n omega_j + arg b_n). Proven for
/// non-exceptional input, heuristic otherwise.
PredictedJ predict_j(const HaymanForm& h, const ClassifyTolerances& tol = {});

/// Full report. Throws ZeroPolynomial / MonomialAllPlane.
Classification classify(const Polynomial& p, const ClassifyTolerances& tol = {});

}  // namespace maxmod
