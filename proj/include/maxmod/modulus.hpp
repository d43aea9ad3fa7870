#pragma once

#include <vector>

#include "maxmod/polynomial.hpp"

namespace maxmod {

struct DiagonalTerm {
    int power = 0;        // 2l
    double weight = 0.0;  // |a_l|^2
};

/// 2|a_j||a_l| r^(j+l) cos(frequency * theta - phase), frequency = l - j > 0,
/// phase = arg a_j - arg a_l.
struct CrossTerm {
    int power = 0;
    double amplitude = 0.0;
    int frequency = 0;
    double phase = 0.0;
};

/// Termwise expansion of |p(r e^{i theta})|^2. Terms are stored in ascending
/// power of r.
struct ModulusExpansion {
    std::vector<DiagonalTerm> diagonal;
    std::vector<CrossTerm> cross;
    int max_power = 0;
};

ModulusExpansion expand(const Polynomial& p);

/// The expansion frozen at one radius: every r-power is folded into the
/// amplitudes so that evaluation on a circle costs one cosine per cross term.
///
/// value() returns only the theta-dependent part. Comparing maximisers through
/// it avoids the O(1) baseline, so near-ties of size ~1e-12 r^k stay resolvable.
class CircleProfile {
public:
    CircleProfile(const ModulusExpansion& e, double r);

    double radius() const noexcept { return r_; }
    double baseline() const noexcept { return baseline_; }
    double value(double theta) const noexcept;
    double derivative(double theta) const noexcept;
    double second_derivative(double theta) const noexcept;
    double mod2(double theta) const noexcept;

    /// sum |c|, sum |c| f, sum |c| f^2: bounds on |value| and its derivatives.
    double scale(int order) const noexcept;

private:
    struct Term {
        double coeff;
        int frequency;
        double phase;
    };
    double r_;
    double baseline_;
    std::vector<Term> terms_;
};

double mod2(const ModulusExpansion& e, double r, double theta);
double dmod2_dtheta(const ModulusExpansion& e, double r, double theta);
double d2mod2_dtheta2(const ModulusExpansion& e, double r, double theta);

/// Oracle: Horner evaluation at r e^{i theta}, squared magnitude.
double direct_mod2(const Polynomial& p, double r, double theta);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

}  // namespace maxmod
