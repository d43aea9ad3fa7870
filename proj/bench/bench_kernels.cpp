#include <benchmark/benchmark.h>

#include <vector>

#include "maxmod/tracer.hpp"

namespace {

using namespace maxmod;

const Polynomial kPoly({1.0, 0.0, Complex{0.7, 0.2}, Complex{0.1, 1.0}, Complex{-0.4, 0.3}, 0.0,
                        Complex{0.2, -0.9}, Complex{0.5, 0.5}});

void BM_ScanSerial(benchmark::State& state) {
    const CircleProfile f(expand(kPoly), 0.05);
    std::vector<double> v(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::scan_circle_serial(f, v);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScanParallel(benchmark::State& state) {
    const CircleProfile f(expand(kPoly), 0.05);
    std::vector<double> v(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        kernels::scan_circle_parallel(f, v);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScheduleSerial(benchmark::State& state) {
    const auto e = expand(kPoly);
    const auto radii = radius_schedule(1e-3, 0.3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::argmax_schedule_serial(e, radii, {}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScheduleParallel(benchmark::State& state) {
    const auto e = expand(kPoly);
    const auto radii = radius_schedule(1e-3, 0.3, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::argmax_schedule_parallel(e, radii, {}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(4096)->Arg(1 << 16);
BENCHMARK(BM_ScanParallel)->Arg(4096)->Arg(1 << 16);
BENCHMARK(BM_ScheduleSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScheduleParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
