#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace maxmod {

using Complex = std::complex<double>;

/// Dense complex polynomial, coefficients in ascending degree.
///
/// Trailing zeros are trimmed on construction (exact zero only). The zero
/// polynomial has no coefficients and degree -1. A polynomial may be flagged
/// as the truncation of a longer power series; classification accepts such
/// input, tracing refuses it.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs, bool truncated_series = false);
    Polynomial(std::initializer_list<Complex> coeffs) : Polynomial(std::vector<Complex>(coeffs)) {}

    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Complex{}; }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool truncated_series() const noexcept { return truncated_; }
    std::size_t nonzero_terms() const noexcept;

    /// Horner evaluation.
    Complex operator()(Complex z) const noexcept;

    /// Coefficients 0..n (fewer if the degree is smaller).
    Polynomial truncate(int n) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<Complex> coeffs_;
    bool truncated_ = false;
};

/// p = prefactor_scalar * z^prefactor_power * tail, tail = 1 + a z^k + ...
struct HaymanForm {
    Complex prefactor_scalar;
    int prefactor_power = 0;
    int k = 0;
    Complex a;
    Polynomial tail;
};

struct MonomialVerdict {
    bool is_monomial = true;
};

using NormalizeResult = std::variant<HaymanForm, MonomialVerdict>;

/// Factors out the lowest nonzero monomial so that the remainder has constant
/// term 1. Throws ZeroPolynomial.
NormalizeResult normalize(const Polynomial& p);

/// Like normalize but throws MonomialAllPlane for c z^n.
HaymanForm hayman_form(const Polynomial& p);

/// gcd of the positive exponents carrying a nonzero coefficient.
int inner_degree(const Polynomial& tail);
inline int inner_degree(const HaymanForm& h) { return inner_degree(h.tail); }

struct CorePolynomial {
    int N = 0;
    Polynomial core;
};

/// Shortest truncation p_N (N >= k) whose inner degree already equals the
/// inner degree of the whole tail.
CorePolynomial core_polynomial(const HaymanForm& h);

/// z^n p(1/z): coefficient reversal. Throws ZeroPolynomial.
Polynomial reciprocal(const Polynomial& p);

/// Parses the comma-separated text format, e.g. "1,0,1,1i" or "1,0,1,0.001+1i".
/// Throws ParseError naming the offending token and its character offset.
Polynomial parse_polynomial(std::string_view text);

/// One complex literal: "2", "-0.5", "1i", "-i", "0.001+1i", "1e-3-2.5i".
Complex parse_complex_literal(std::string_view token, std::size_t position = 0);

}  // namespace maxmod
