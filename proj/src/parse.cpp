#include <charconv>
#include <cmath>
#include <string>

#include "maxmod/error.hpp"
#include "maxmod/polynomial.hpp"

namespace maxmod {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Real number with optional sign; an empty (or sign-only) mantissa means 1
// when allow_unit is set, as in "i" or "-i".
double parse_real(std::string_view s, bool allow_unit, std::string_view token, std::size_t position) {
    double sign = 1.0;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        sign = s.front() == '-' ? -1.0 : 1.0;
        s.remove_prefix(1);
    }
    if (s.empty()) {
        if (allow_unit) {
            return sign;
        }
        throw ParseError(std::string(token), position, "missing number");
    }
    double value = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw ParseError(std::string(token), position, "malformed number");
    }
    return sign * value;
}

}  // namespace

Complex parse_complex_literal(std::string_view token, std::size_t position) {
    if (token.empty()) {
        throw ParseError(std::string(token), position, "empty coefficient");
    }
    if (token.back() != 'i') {
        return {parse_real(token, false, token, position), 0.0};
    }
    const std::string_view body = token.substr(0, token.size() - 1);
    // Split at the last sign that is not leading and not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) {
        return {0.0, parse_real(body, true, token, position)};
    }
    return {parse_real(body.substr(0, split), false, token, position),
            parse_real(body.substr(split), true, token, position + split)};
}

Polynomial parse_polynomial(std::string_view text) {
    std::vector<Complex> coeffs;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
        std::size_t b = start;
        std::size_t e = end;
        while (b < e && is_space(text[b])) {
            ++b;
        }
        while (e > b && is_space(text[e - 1])) {
            --e;
        }
        coeffs.push_back(parse_complex_literal(text.substr(b, e - b), b));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return Polynomial(std::move(coeffs));
}

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::MonomialAllPlane: return "MonomialAllPlane";
        case ErrorKind::NotCubicFamily: return "NotCubicFamily";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::RefinementFailure: return "RefinementFailure";
        case ErrorKind::FloorViolation: return "FloorViolation";
        case ErrorKind::TruncatedSeries: return "TruncatedSeries";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::InternalError: return "InternalError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace maxmod
