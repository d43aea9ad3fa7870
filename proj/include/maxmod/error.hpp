#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxmod {

enum class ErrorKind {
    ZeroPolynomial,
    MonomialAllPlane,
    NotCubicFamily,
    ParseError,
    RefinementFailure,
    FloorViolation,
    TruncatedSeries,
    InvalidConfig,
    InternalError,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library. what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::string token, std::size_t position, const std::string& detail)
        : Error(ErrorKind::ParseError,
                detail + " at position " + std::to_string(position) + " (token '" + token + "')"),
          token_(std::move(token)), position_(position) {}

    const std::string& token() const noexcept { return token_; }
    std::size_t position() const noexcept { return position_; }

private:
    std::string token_;
    std::size_t position_;
};

class RefinementFailure : public Error {
public:
    RefinementFailure(double radius, double theta_seed)
        : Error(ErrorKind::RefinementFailure,
                "no convergence at r=" + std::to_string(radius) + " seed theta=" +
                    std::to_string(theta_seed)),
          radius_(radius), theta_seed_(theta_seed) {}

    double radius() const noexcept { return radius_; }
    double theta_seed() const noexcept { return theta_seed_; }

private:
    double radius_;
    double theta_seed_;
};

class FloorViolation : public Error {
public:
    FloorViolation(double requested, double minimum)
        : Error(ErrorKind::FloorViolation,
                "r_min=" + std::to_string(requested) + " is below the numerical floor " +
                    std::to_string(minimum)),
          requested_(requested), minimum_(minimum) {}

    double requested() const noexcept { return requested_; }
    double minimum() const noexcept { return minimum_; }

private:
    double requested_;
    double minimum_;
};

}  // namespace maxmod
