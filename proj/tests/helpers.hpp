#pragma once

#include <complex>
#include <random>
#include <vector>

#include "maxmod/angles.hpp"
#include "maxmod/polynomial.hpp"

namespace maxmod::testing {

inline Complex random_in_disc(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    while (true) {
        const Complex z{u(rng), u(rng)};
        if (std::abs(z) <= radius) {
            return z;
        }
    }
}

inline Complex random_polar(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> mod(lo, hi);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    return std::polar(mod(rng), ang(rng));
}

/// Degree exactly `degree`, every coefficient drawn from the disc.
inline Polynomial random_polynomial(std::mt19937_64& rng, int degree, double radius) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    for (auto& x : c) {
        x = random_in_disc(rng, radius);
    }
    if (c.back() == Complex{}) {
        c.back() = 1.0;
    }
    return Polynomial(std::move(c));
}

/// 1 + a z^k + b_{k+1} z^{k+1} + ... + b_degree z^degree, all nonzero.
inline Polynomial random_hayman(std::mt19937_64& rng, int k, int degree) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
    c[0] = 1.0;
    for (int i = k; i <= degree; ++i) {
        c[static_cast<std::size_t>(i)] = random_polar(rng, 0.5, 2.0);
    }
    return Polynomial(std::move(c));
}

}  // namespace maxmod::testing
