#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "maxmod/angles.hpp"
#include "maxmod/classify.hpp"
#include "maxmod/error.hpp"
#include "maxmod/tracer.hpp"

using namespace maxmod;

namespace {

const Complex I{0.0, 1.0};
const Polynomial kMagic({1.0, 0.0, 1.0, I});
const Polynomial kPerturbed({1.0, 0.0, 1.0, Complex{0.001, 1.0}});
const Polynomial kQuartic({1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0});

TraceConfig config(double r_min, double r_max, int n = 200) {
    TraceConfig c;
    c.r_min = r_min;
    c.r_max = r_max;
    c.n_radii = n;
    return c;
}

std::vector<double> thetas(const std::vector<Maximizer>& ms) {
    std::vector<double> out;
    for (const auto& m : ms) {
        out.push_back(m.theta);
    }
    return out;
}

}  // namespace

TEST_CASE("circle_argmax examples") {
    SUBCASE("two-term: k maximisers exactly at omega_j") {
        std::mt19937_64 rng(8);
        for (int k = 1; k <= 7; ++k) {
            const Complex a = maxmod::testing::random_polar(rng, 0.5, 2.0);
            std::vector<Complex> c(static_cast<std::size_t>(k) + 1, Complex{});
            c[0] = 1.0;
            c.back() = a;
            const Polynomial p(c);
            const auto omega = omega_angles(hayman_form(p));
            for (double r : {1e-3, 0.05, 0.3}) {
                const auto ms = circle_argmax(expand(p), r);
                REQUIRE(static_cast<int>(ms.size()) == k);
                for (const auto& m : ms) {
                    double best = 10;
                    for (double w : omega) {
                        best = std::min(best, angular_distance(m.theta, w));
                    }
                    CHECK(best < 1e-12);
                }
            }
        }
    }
    SUBCASE("magic cubic: two maximisers mirrored in the imaginary axis") {
        const auto ms = circle_argmax(expand(kMagic), 0.1);
        REQUIRE(ms.size() == 2);
        CHECK(angular_distance(ms[0].theta, kPi - ms[1].theta) < 1e-12);
        CHECK(std::abs(ms[0].mod2 - ms[1].mod2) < 1e-14);
    }
    SUBCASE("1 + z^2 + z^3: one maximiser at 0, matching the dense oracle") {
        const Polynomial p({1.0, 0.0, 1.0, 1.0});
        const auto ms = circle_argmax(expand(p), 0.1);
        REQUIRE(ms.size() == 1);
        CHECK(std::abs(ms[0].theta) < 1e-12);
        const auto clusters = cluster_grid_angles(brute_force_mset(p, 0.1, 1 << 16), 1 << 16);
        REQUIRE(clusters.size() == 1);
        CHECK(std::abs(clusters[0].members.front()) <= kTwoPi / (1 << 16) * 2);
    }
    SUBCASE("r must be positive") {
        CHECK_THROWS_AS(circle_argmax(expand(kMagic), 0.0), Error);
    }
}

TEST_CASE("brute force oracle") {
    const Polynomial p({1.0, 1.0});
    const auto clusters = cluster_grid_angles(brute_force_mset(p, 0.5, 4096), 4096);
    REQUIRE(clusters.size() == 1);
    CHECK(angular_distance(clusters[0].first, 0.0) < 0.01);

    const auto magic = cluster_grid_angles(brute_force_mset(kMagic, 0.1, 1 << 16), 1 << 16);
    const auto refined = circle_argmax(expand(kMagic), 0.1);
    REQUIRE(magic.size() == 2);
    for (const auto& m : refined) {
        double best = 10;
        for (const auto& c : magic) {
            for (double t : c.members) {
                best = std::min(best, angular_distance(t, m.theta));
            }
        }
        CHECK(best <= kTwoPi / (1 << 16));
    }

    SUBCASE("clusters straddling the branch cut merge") {
        const int g = 64;
        const double s = kTwoPi / g;
        const auto cl = cluster_grid_angles({kPi, kPi - s, -kPi + s, 0.0}, g);
        CHECK(cl.size() == 2);
    }
}

TEST_CASE("oracle agreement over a schedule (property)") {
    const std::vector<Polynomial> polys = {
        kMagic, kPerturbed, Polynomial({1.0, 0.0, 1.0, 1.0}), kQuartic,
        Polynomial({1.0, Complex{0.3, -0.4}, Complex{0.0, 0.7}, 1.1}),
        Polynomial({1.0, 0.0, 0.0, Complex{-0.5, 0.9}, 0.8, Complex{0.2, 0.2}}),
    };
    const int g = 1 << 16;
    for (const auto& p : polys) {
        const auto e = expand(p);
        const auto h = hayman_form(p);
        const double lo = std::max(2e-3, 2 * numerical_floor(h));
        for (double r : radius_schedule(lo, 0.3, 12)) {
            const auto refined = circle_argmax(e, r);
            const auto clusters = cluster_grid_angles(brute_force_mset(p, r, g), g);
            CHECK(clusters.size() == refined.size());
            for (const auto& m : refined) {
                double best = 10;
                for (const auto& c : clusters) {
                    for (double t : c.members) {
                        best = std::min(best, angular_distance(t, m.theta));
                    }
                }
                CHECK(best <= kTwoPi / g);
            }
        }
    }
}

TEST_CASE("trace examples") {
    SUBCASE("1 + z^2: two exact rays") {
        const auto t = trace(Polynomial({1.0, 0.0, 1.0}), config(1e-3, 0.3, 50));
        CHECK(t.n_components == 2);
        for (const auto& tg : t.tangents) {
            CHECK(tg.on_ray);
            CHECK(tg.deviation < 1e-12);
        }
        for (const auto& s : t.samples) {
            CHECK(std::min(angular_distance(s.theta, 0.0), angular_distance(s.theta, kPi)) < 1e-12);
        }
    }
    SUBCASE("magic cubic: two components") {
        const auto t = trace(kMagic, config(1e-3, 0.3));
        CHECK(t.n_components == 2);
        CHECK(t.events.empty());
    }
    SUBCASE("perturbed cubic: one component") {
        const auto t = trace(kPerturbed, config(1e-3, 0.05));
        CHECK(t.n_components == 1);
    }
}

TEST_CASE("trace invariants") {
    std::mt19937_64 rng(12);
    std::vector<std::pair<Polynomial, TraceConfig>> cases = {
        {kMagic, config(1e-3, 0.3)},
        {kPerturbed, config(1e-3, 0.05)},
        {kQuartic, config(1e-2, 0.3)},
        {Polynomial({1.0, 0.0, 1.0, 1.0}), config(1e-3, 0.3)},
    };
    for (int i = 0; i < 4; ++i) {
        auto p = maxmod::testing::random_hayman(rng, 1 + i % 3, 3 + i);
        cases.push_back({p, config(std::max(1e-3, 2 * numerical_floor(hayman_form(p))), 0.05)});
    }
    for (const auto& [p, cfg] : cases) {
        const auto t = trace(p, cfg);
        const auto e = expand(hayman_form(p).tail);
        const auto cls = classify(p);
        CAPTURE(p.degree());

        // stationarity and second-order condition
        for (const auto& s : t.samples) {
            const CircleProfile f(e, s.r);
            CHECK(std::abs(f.derivative(s.theta)) <= cfg.newton_tol * f.scale(1));
            CHECK(f.second_derivative(s.theta) <= cfg.newton_tol * f.scale(2));
        }
        // one sample per radius per curve
        for (int id = 0; id < t.n_curves; ++id) {
            auto c = t.curve(id);
            for (std::size_t i = 1; i < c.size(); ++i) {
                CHECK(c[i].r < c[i - 1].r);
            }
        }
        // tangency and sector confinement
        REQUIRE(t.tangents.size() == t.surviving.size());
        for (const auto& tg : t.tangents) {
            CHECK(tg.fitted);
            CHECK(tg.alpha_hat >= 0.45);
            CHECK(tg.deviation <= 1e-6);
            for (const auto& s : t.curve(tg.curve_id)) {
                if (s.r <= cfg.r_max / 2) {
                    CHECK(angular_distance(s.theta, tg.matched_omega) < kPi / t.k);
                }
            }
        }
        if (!cls.exceptional) {
            CHECK(t.n_components == cls.mu);
        }
        CHECK(cls.predicted_count.contains(t.n_components));
    }
}

TEST_CASE("rotation symmetry for mu = 2") {
    const auto t = trace(kQuartic, config(1e-2, 0.3));
    REQUIRE(t.n_components == 2);
    REQUIRE(t.symmetry.size() == 2);
    for (const auto& s : t.symmetry) {
        CHECK(s.curve != s.image);
        CHECK(s.max_deviation <= 1e-9);
    }
    // A non-real mu = 2 case: 1 + a z^2 + b z^4 + c z^6.
    const Polynomial p({1.0, 0.0, Complex{0.4, 0.9}, 0.0, Complex{-1.2, 0.3}, 0.0, Complex{0.5, -0.5}});
    const auto u = trace(p, config(std::max(1e-3, 2 * numerical_floor(hayman_form(p))), 0.1));
    CHECK(u.mu == 2);
    CHECK(u.n_components % 2 == 0);
    for (const auto& s : u.symmetry) {
        CHECK(s.max_deviation <= 1e-9);
    }
}

TEST_CASE("trace at infinity") {
    SUBCASE("i + z + z^3 at infinity is the magic cubic at the origin") {
        const auto t = trace_at_infinity(Polynomial({I, 1.0, 0.0, 1.0}), config(1e-3, 0.3, 60));
        CHECK(t.at_infinity);
        CHECK(t.n_components == 2);
        const auto ref = trace(kMagic, config(1e-3, 0.3, 60));
        REQUIRE(t.samples.size() == ref.samples.size());
        for (std::size_t i = 0; i < t.samples.size(); ++i) {
            CHECK(t.samples[i].theta == ref.samples[i].theta);
        }
    }
    SUBCASE("1 + z is self-reciprocal") {
        const auto a = trace_at_infinity(Polynomial({1.0, 1.0}), config(1e-3, 0.3, 30));
        const auto b = trace(Polynomial({1.0, 1.0}), config(1e-3, 0.3, 30));
        CHECK(a.n_components == b.n_components);
        REQUIRE(a.samples.size() == b.samples.size());
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
            CHECK(a.samples[i].theta == b.samples[i].theta);
        }
    }
    SUBCASE("maximisers at r and 1/r are conjugate") {
        const Polynomial p({I, 1.0, 0.0, 1.0});
        const auto q = std::get<HaymanForm>(normalize(reciprocal(p))).tail;
        for (double r : {3.0, 5.5, 10.0}) {
            auto at_p = thetas(circle_argmax(expand(p), r));
            auto at_q = thetas(circle_argmax(expand(q), 1.0 / r));
            REQUIRE(at_p.size() == at_q.size());
            for (double x : at_p) {
                double best = 10;
                for (double y : at_q) {
                    best = std::min(best, angular_distance(x, -y));
                }
                CHECK(best <= 1e-8);
            }
        }
    }
}

TEST_CASE("trace errors") {
    SUBCASE("numerical floor") {
        try {
            trace(kMagic, config(1e-7, 0.3));
            FAIL("expected FloorViolation");
        } catch (const FloorViolation& e) {
            CHECK(e.minimum() == doctest::Approx(numerical_floor(hayman_form(kMagic))));
            CHECK(e.minimum() > 1e-7);
        }
    }
    SUBCASE("truncated series are refused") {
        try {
            trace(Polynomial({1.0, 0.0, 1.0, I}, true));
            FAIL("expected TruncatedSeries");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::TruncatedSeries);
        }
    }
    SUBCASE("monomial") {
        CHECK_THROWS_AS(trace(Polynomial({0.0, 2.0})), Error);
    }
    SUBCASE("invalid config") {
        TraceConfig c;
        c.r_min = 0.5;
        c.r_max = 0.1;
        CHECK_THROWS_AS(trace(kMagic, c), Error);
        c = TraceConfig{};
        c.grid = 32;
        CHECK_THROWS_AS(trace(kMagic, c), Error);
        c = TraceConfig{};
        c.n_radii = 1;
        CHECK_THROWS_AS(trace(kMagic, c), Error);
    }
    SUBCASE("refinement budget exhausted") {
        TraceConfig c = config(1e-3, 0.3, 10);
        c.newton_max_iter = 1;
        CHECK_THROWS_AS(trace(kPerturbed, c), RefinementFailure);
    }
}

TEST_CASE("radius schedule") {
    const auto r = radius_schedule(1e-3, 0.3, 200);
    CHECK(r.size() == 200);
    CHECK(r.front() == 0.3);
    CHECK(r.back() == 1e-3);
    const double ratio = r[1] / r[0];
    for (std::size_t i = 1; i < r.size(); ++i) {
        CHECK(r[i] / r[i - 1] == doctest::Approx(ratio).epsilon(1e-12));
    }
}

TEST_CASE("curve birth and death are recorded") {
    // At larger radii the z^3 term of 1 + z^2 - 3 z^3 creates a second global
    // maximum that is lost as r decreases.
    const Polynomial p({1.0, 0.0, 1.0, -3.0});
    const auto t = trace(p, config(1e-3, 0.6, 120));
    CHECK(t.n_components == 1);
    for (const auto& ev : t.events) {
        CHECK(ev.radius < 0.6);
        CHECK(ev.radius >= t.stable_below_radius);
    }
}
