#include "gregory/exact_core.hpp"
#include "gregory/properties.hpp"
#include "gregory/quadrature.hpp"

#include <benchmark/benchmark.h>

using gregory::kernels::Execution;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void BM_BIntegralTable(benchmark::State& state) {
    gregory::quadrature::Options opts;
    opts.execution = mode(state);
    for (auto _ : state) {
        double acc = 0.0;
        for (int n = 1; n <= 20; ++n) acc += gregory::quadrature::b_integral(n, 1e-10, opts).value;
        benchmark::DoNotOptimize(acc);
    }
}

void BM_HighLevelQuadrature(benchmark::State& state) {
    gregory::quadrature::Options opts;
    opts.execution = mode(state);
    opts.max_levels = 12;
    for (auto _ : state) {
        // Not convergent by design, so every level is summed.
        auto r = gregory::quadrature::integrate_01(
            [](double s) { return gregory::quadrature::kernel_v(s) / s; }, 1e-14, opts);
        benchmark::DoNotOptimize(r.value);
    }
}

void BM_HankelSweep(benchmark::State& state) {
    const auto table = gregory::exact::bernoulli2_series(30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gregory::properties::hankel_sweep(table, 4, 5, mode(state)).passed);
    }
}

void BM_MajorizationSweep(benchmark::State& state) {
    const auto table = gregory::exact::bernoulli2_series(30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gregory::properties::majorization_sweep(table, 3, 6, mode(state)).passed);
    }
}

}  // namespace

// Arg 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_BIntegralTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HighLevelQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HankelSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MajorizationSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
