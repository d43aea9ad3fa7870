#include <doctest.h>

#include <cstring>

#include "helpers.hpp"
#include "maxmod/error.hpp"
#include "maxmod/tracer.hpp"

using namespace maxmod;

namespace {

bool same_bits(double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; }

}  // namespace

TEST_CASE("circle scan: serial and parallel agree bit for bit") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto e = expand(maxmod::testing::random_hayman(rng, 1 + trial % 3, 4 + trial % 5));
        const CircleProfile f(e, 0.01 + 0.03 * trial);
        std::vector<double> a(4096), b(4096);
        kernels::scan_circle_serial(f, a);
        kernels::scan_circle_parallel(f, b);
        for (std::size_t i = 0; i < a.size(); ++i) {
            REQUIRE(same_bits(a[i], b[i]));
        }
        CHECK(same_bits(a[17], f.value(kTwoPi * 17 / 4096)));
    }
}

TEST_CASE("argmax schedule: serial and parallel agree bit for bit") {
    const Complex I{0.0, 1.0};
    std::mt19937_64 rng(22);
    std::vector<Polynomial> polys = {Polynomial({1.0, 0.0, 1.0, I}),
                                     Polynomial({1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0})};
    for (int i = 0; i < 4; ++i) {
        polys.push_back(maxmod::testing::random_hayman(rng, 1 + i % 3, 5));
    }
    const auto radii = radius_schedule(1e-2, 0.3, 40);
    for (const auto& p : polys) {
        const auto e = expand(p);
        const auto s = kernels::argmax_schedule_serial(e, radii, {});
        const auto q = kernels::argmax_schedule_parallel(e, radii, {});
        REQUIRE(s.size() == q.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            REQUIRE(s[i].size() == q[i].size());
            for (std::size_t j = 0; j < s[i].size(); ++j) {
                CHECK(same_bits(s[i][j].theta, q[i][j].theta));
                CHECK(same_bits(s[i][j].mod2, q[i][j].mod2));
            }
        }
    }
}

TEST_CASE("trace is independent of the parallel flag and thread count") {
    const Polynomial p({1.0, 0.0, 1.0, Complex{0.2, 1.0}, 0.5});
    TraceConfig cfg;
    cfg.n_radii = 60;
    cfg.parallel = false;
    const auto a = trace(p, cfg);
    cfg.parallel = true;
    set_max_threads(3);
    const auto b = trace(p, cfg);
    set_max_threads(0);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(same_bits(a.samples[i].theta, b.samples[i].theta));
    }
    CHECK(max_threads() >= 1);
}

TEST_CASE("parallel kernel propagates refinement failures") {
    TraceConfig cfg;
    cfg.newton_max_iter = 1;
    const auto e = expand(Polynomial({1.0, 0.0, 1.0, Complex{0.001, 1.0}}));
    const auto radii = radius_schedule(1e-3, 0.3, 8);
    CHECK_THROWS_AS(kernels::argmax_schedule_parallel(e, radii, cfg), RefinementFailure);
}
