#include "maxmod/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxmod/angles.hpp"
#include "maxmod/error.hpp"

namespace maxmod {

std::string_view to_string(Validity v) noexcept {
    return v == Validity::Proven ? "PROVEN" : "HEURISTIC";
}

std::string_view to_string(MagicVerdict v) noexcept {
    switch (v) {
        case MagicVerdict::NotMagic: return "NOT_MAGIC";
        case MagicVerdict::Magic: return "MAGIC";
        case MagicVerdict::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

std::vector<double> omega_angles(const HaymanForm& h) {
    const double arg_a = principal_arg(h.a);
    std::vector<double> omega;
    omega.reserve(static_cast<std::size_t>(h.k));
    for (int j = 0; j < h.k; ++j) {
        omega.push_back(wrap_angle((2.0 * j * kPi - arg_a) / h.k));
    }
    return omega;
}

ExceptionalResult is_exceptional(const HaymanForm& h, const ClassifyTolerances& tol) {
    ExceptionalResult out;
    out.min_residual = std::numeric_limits<double>::infinity();
    const int N = core_polynomial(h).N;
    const double arg_a_over_pi = principal_arg(h.a) / kPi;
    for (int sigma = h.k + 1; sigma <= N; ++sigma) {
        const Complex b = h.tail[static_cast<std::size_t>(sigma)];
        if (b == Complex{}) {
            continue;
        }
        const double arg_b_over_pi = principal_arg(b) / kPi;
        for (int m = 1; m <= 2 * h.k - 3; ++m) {
            // m pi = (k / sigma)(m' pi - arg b) + arg a, solved for m'.
            const double m_prime = sigma * (m - arg_a_over_pi) / h.k + arg_b_over_pi;
            const double nearest = std::round(m_prime);
            const double residual = std::abs(m_prime - nearest);
            out.min_residual = std::min(out.min_residual, residual);
            if (residual <= tol.eps_arg) {
                out.witnesses.push_back({m, static_cast<long long>(nearest), sigma, residual});
            }
        }
    }
    out.exceptional = !out.witnesses.empty();
    return out;
}

MagicVerdict cubic_magic(const HaymanForm& h, const ClassifyTolerances& tol) {
    const int degree = h.tail.degree();
    if (degree > 3) {
        throw Error(ErrorKind::NotCubicFamily,
                    "tail has degree " + std::to_string(degree) + ", expected at most 3");
    }
    if (degree < 3 || h.k != 2) {
        return MagicVerdict::NotMagic;
    }
    const Complex b = h.tail[3];
    const Complex root = std::sqrt(h.a);
    const Complex b_scaled = b / (root * root * root);
    const double threshold = tol.eps_mag * std::abs(b) * std::pow(std::abs(h.a), -1.5);
    return std::abs(b_scaled.real()) <= threshold ? MagicVerdict::Magic : MagicVerdict::NotMagic;
}

namespace {

// J must be exactly {j0, j0 + k/mu, ..., j0 + (mu - 1) k/mu}.
bool is_single_residue_class(const std::vector<int>& j_set, int k, int mu) {
    if (static_cast<int>(j_set.size()) != mu) {
        return false;
    }
    const int period = k / mu;
    const int j0 = j_set.front() % period;
    for (int i = 0; i < mu; ++i) {
        if (j_set[static_cast<std::size_t>(i)] != j0 + i * period) {
            return false;
        }
    }
    return true;
}

}  // namespace

PredictedJ predict_j(const HaymanForm& h, const ClassifyTolerances& tol) {
    PredictedJ out;
    const auto omega = omega_angles(h);
    for (int j = 0; j < h.k; ++j) {
        out.j_set.push_back(j);
    }
    const auto c = h.tail.coeffs();
    for (int n = h.k + 1; n <= h.tail.degree(); ++n) {
        const Complex b = c[static_cast<std::size_t>(n)];
        if (b == Complex{}) {
            continue;
        }
        const double abs_b = std::abs(b);
        const double arg_b = principal_arg(b);
        TStep step;
        step.n = n;
        step.j = out.j_set;
        double t_max = -std::numeric_limits<double>::infinity();
        for (int j : out.j_set) {
            const double t = 2.0 * abs_b * std::cos(n * omega[static_cast<std::size_t>(j)] + arg_b);
            step.t.push_back(t);
            t_max = std::max(t_max, t);
        }
        const double cutoff = t_max - tol.eps_t * 2.0 * abs_b;
        for (std::size_t i = 0; i < step.j.size(); ++i) {
            if (step.t[i] >= cutoff) {
                step.retained.push_back(step.j[i]);
            }
        }
        out.j_set = step.retained;
        out.t_history.push_back(std::move(step));
    }

    out.validity = is_exceptional(h, tol).exceptional ? Validity::Heuristic : Validity::Proven;
    if (out.validity == Validity::Proven) {
        const int mu = inner_degree(h);
        if (!is_single_residue_class(out.j_set, h.k, mu)) {
            throw Error(ErrorKind::InternalError,
                        "predicted J for a non-exceptional polynomial is not one residue class mod k/mu");
        }
    }
    return out;
}

Classification classify(const Polynomial& p, const ClassifyTolerances& tol) {
    const HaymanForm h = hayman_form(p);
    Classification c;
    c.k = h.k;
    c.a = h.a;
    c.mu = inner_degree(h);
    c.N = core_polynomial(h).N;
    c.omega = omega_angles(h);

    const auto exc = is_exceptional(h, tol);
    c.exceptional = exc.exceptional;
    c.witnesses = exc.witnesses;
    c.minimal = !exc.exceptional;
    if (!exc.exceptional && exc.min_residual <= tol.warn_arg) {
        c.warnings.push_back("near-exceptional: smallest m' residual " + std::to_string(exc.min_residual));
    }

    c.predicted_j = predict_j(h, tol);
    if (h.tail.degree() <= 3) {
        c.magic = cubic_magic(h, tol);
        if (c.magic == MagicVerdict::Magic && !c.exceptional) {
            c.warnings.push_back("cubic magic test and exceptional test disagree inside the tolerance band");
        }
    } else {
        c.magic = c.exceptional ? MagicVerdict::Unknown : MagicVerdict::NotMagic;
    }

    if (c.exceptional) {
        c.predicted_count = {c.mu, h.k, c.mu};
    } else {
        c.predicted_count = {c.mu, c.mu, c.mu};
    }
    if (c.magic == MagicVerdict::Magic) {
        c.conjecture_count = 2 * c.mu;
    }
    if (p.truncated_series()) {
        c.warnings.push_back("truncated series: valid only if the truncation includes degree N=" +
                             std::to_string(c.N));
    }
    return c;
}

}  // namespace maxmod
