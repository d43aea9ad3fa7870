#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace maxmod {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to (-pi, pi].
inline double wrap_angle(double theta) noexcept {
    double t = std::remainder(theta, kTwoPi);
    if (t <= -kPi) {
        t += kTwoPi;
    }
    return t;
}

/// arg with the branch (-pi, pi].
inline double principal_arg(std::complex<double> z) noexcept {
    return wrap_angle(std::arg(z));
}

/// Distance on the circle, in [0, pi].
inline double angular_distance(double a, double b) noexcept {
    return std::abs(wrap_angle(a - b));
}

}  // namespace maxmod
