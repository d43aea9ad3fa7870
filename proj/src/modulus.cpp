#include "maxmod/modulus.hpp"

#include <algorithm>
#include <cmath>

#include "maxmod/angles.hpp"

namespace maxmod {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        carry_ += (sum_ - t) + x;
    } else {
        carry_ += (x - t) + sum_;
    }
    sum_ = t;
}

ModulusExpansion expand(const Polynomial& p) {
    ModulusExpansion e;
    const auto c = p.coeffs();
    std::vector<int> support;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != Complex{}) {
            support.push_back(static_cast<int>(i));
        }
    }
    for (int l : support) {
        e.diagonal.push_back({2 * l, std::norm(c[static_cast<std::size_t>(l)])});
    }
    for (std::size_t x = 0; x < support.size(); ++x) {
        for (std::size_t y = x + 1; y < support.size(); ++y) {
            const int j = support[x];
            const int l = support[y];
            const Complex aj = c[static_cast<std::size_t>(j)];
            const Complex al = c[static_cast<std::size_t>(l)];
            e.cross.push_back({j + l, 2.0 * std::abs(aj) * std::abs(al), l - j,
                               std::arg(aj) - std::arg(al)});
        }
    }
    std::stable_sort(e.cross.begin(), e.cross.end(),
                     [](const CrossTerm& u, const CrossTerm& v) { return u.power < v.power; });
    e.max_power = support.empty() ? 0 : 2 * support.back();
    return e;
}

CircleProfile::CircleProfile(const ModulusExpansion& e, double r) : r_(r) {
    std::vector<double> powers(static_cast<std::size_t>(e.max_power) + 1);
    powers[0] = 1.0;
    for (std::size_t n = 1; n < powers.size(); ++n) {
        powers[n] = powers[n - 1] * r;
    }
    CompensatedSum base;
    for (const auto& d : e.diagonal) {
        base.add(d.weight * powers[static_cast<std::size_t>(d.power)]);
    }
    baseline_ = base.value();
    terms_.reserve(e.cross.size());
    for (const auto& t : e.cross) {
        terms_.push_back({t.amplitude * powers[static_cast<std::size_t>(t.power)], t.frequency, t.phase});
    }
}

double CircleProfile::value(double theta) const noexcept {
    theta = wrap_angle(theta);
    CompensatedSum s;
    for (const auto& t : terms_) {
        s.add(t.coeff * std::cos(t.frequency * theta - t.phase));
    }
    return s.value();
}

double CircleProfile::derivative(double theta) const noexcept {
    theta = wrap_angle(theta);
    CompensatedSum s;
    for (const auto& t : terms_) {
        s.add(-t.coeff * t.frequency * std::sin(t.frequency * theta - t.phase));
    }
    return s.value();
}

double CircleProfile::second_derivative(double theta) const noexcept {
    theta = wrap_angle(theta);
    CompensatedSum s;
    for (const auto& t : terms_) {
        const double f = t.frequency;
        s.add(-t.coeff * f * f * std::cos(t.frequency * theta - t.phase));
    }
    return s.value();
}

double CircleProfile::mod2(double theta) const noexcept {
    return baseline_ + value(theta);
}

double CircleProfile::scale(int order) const noexcept {
    double s = 0.0;
    for (const auto& t : terms_) {
        s += std::abs(t.coeff) * std::pow(static_cast<double>(t.frequency), order);
    }
    return s;
}

double mod2(const ModulusExpansion& e, double r, double theta) {
    return CircleProfile(e, r).mod2(theta);
}

double dmod2_dtheta(const ModulusExpansion& e, double r, double theta) {
    return CircleProfile(e, r).derivative(theta);
}

double d2mod2_dtheta2(const ModulusExpansion& e, double r, double theta) {
    return CircleProfile(e, r).second_derivative(theta);
}

double direct_mod2(const Polynomial& p, double r, double theta) {
    return std::norm(p(std::polar(r, theta)));
}

}  // namespace maxmod
