#include "maxmod/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "maxmod/error.hpp"

namespace maxmod {

Polynomial::Polynomial(std::vector<Complex> coeffs, bool truncated_series)
    : coeffs_(std::move(coeffs)), truncated_(truncated_series) {
    while (!coeffs_.empty() && coeffs_.back() == Complex{}) {
        coeffs_.pop_back();
    }
}

std::size_t Polynomial::nonzero_terms() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c != Complex{}; }));
}

Complex Polynomial::operator()(Complex z) const noexcept {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

Polynomial Polynomial::truncate(int n) const {
    const auto len = std::min<std::size_t>(coeffs_.size(), static_cast<std::size_t>(std::max(n + 1, 0)));
    return Polynomial(std::vector<Complex>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(len)),
                      truncated_);
}

NormalizeResult normalize(const Polynomial& p) {
    if (p.is_zero()) {
        throw Error(ErrorKind::ZeroPolynomial, "cannot normalize the zero polynomial");
    }
    if (p.nonzero_terms() == 1) {
        return MonomialVerdict{true};
    }
    const auto c = p.coeffs();
    std::size_t m = 0;
    while (c[m] == Complex{}) {
        ++m;
    }
    const Complex scale = c[m];
    std::vector<Complex> tail;
    tail.reserve(c.size() - m);
    tail.push_back(Complex{1.0, 0.0});
    for (std::size_t i = m + 1; i < c.size(); ++i) {
        tail.push_back(c[i] == Complex{} ? Complex{} : c[i] / scale);
    }

    HaymanForm h;
    h.prefactor_scalar = scale;
    h.prefactor_power = static_cast<int>(m);
    h.tail = Polynomial(std::move(tail), p.truncated_series());
    const auto t = h.tail.coeffs();
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] != Complex{}) {
            h.k = static_cast<int>(i);
            h.a = t[i];
            break;
        }
    }
    return h;
}

HaymanForm hayman_form(const Polynomial& p) {
    auto r = normalize(p);
    if (std::holds_alternative<MonomialVerdict>(r)) {
        throw Error(ErrorKind::MonomialAllPlane, "c z^n attains its maximum modulus everywhere");
    }
    return std::get<HaymanForm>(std::move(r));
}

int inner_degree(const Polynomial& tail) {
    int g = 0;
    const auto c = tail.coeffs();
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i] != Complex{}) {
            g = std::gcd(g, static_cast<int>(i));
        }
    }
    return g;
}

CorePolynomial core_polynomial(const HaymanForm& h) {
    const int mu = inner_degree(h.tail);
    const auto c = h.tail.coeffs();
    int g = 0;
    for (int n = 1; n <= h.tail.degree(); ++n) {
        if (c[static_cast<std::size_t>(n)] != Complex{}) {
            g = std::gcd(g, n);
        }
        if (n >= h.k && g == mu) {
            return {n, h.tail.truncate(n)};
        }
    }
    throw Error(ErrorKind::InternalError, "core polynomial scan did not terminate");
}

Polynomial reciprocal(const Polynomial& p) {
    if (p.is_zero()) {
        throw Error(ErrorKind::ZeroPolynomial, "reciprocal of the zero polynomial");
    }
    std::vector<Complex> rev(p.coeffs().rbegin(), p.coeffs().rend());
    return Polynomial(std::move(rev), p.truncated_series());
}

}  // namespace maxmod
