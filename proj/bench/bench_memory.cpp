// Serial vs OpenMP memory convolution, and a full nonlocal run.
//
//   ./bench_memory --benchmark_filter=Memory

#include "pseudopara/fracint.hpp"
#include "pseudopara/kernels.hpp"
#include "pseudopara/solver.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace pseudopara;

namespace {

struct Fixture {
    History history;
    std::vector<double> weights;
    std::vector<double> out;

    Fixture(std::size_t rows, std::size_t width) : history(width), out(width) {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> d(0.0, 1.0);
        std::vector<double> row(width);
        std::vector<double> times;
        for (std::size_t j = 0; j < rows; ++j) {
            for (double& x : row) {
                x = d(rng);
            }
            history.append(row);
            times.push_back(0.01 * static_cast<double>(j));
        }
        product_trapezoid_weights(times, 0.5, weights);
    }
};

template <void (*Kernel)(std::span<const double>, const History&, std::span<double>)>
void BM_Memory(benchmark::State& state) {
    Fixture f(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) {
        Kernel(f.weights, f.history, f.out);
        benchmark::DoNotOptimize(f.out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void shapes(benchmark::internal::Benchmark* b) {
    for (int rows : {500, 2000}) {
        for (int width : {201, 1001, 4001}) {
            b->Args({rows, width});
        }
    }
}

void BM_NonlocalRun(benchmark::State& state) {
    ProblemSpec spec;
    spec.k = 1.0;
    spec.p = 2.0;
    spec.gamma = 0.5;
    spec.omega = RadialProfile::gaussian(0.1, 1.0);
    const RadialGrid grid(3, 100.0, static_cast<int>(state.range(0)), Boundary::Dirichlet);
    RunControl control;
    control.dt0 = 0.01;
    control.horizon = 10.0;
    control.adaptive = false;
    for (auto _ : state) {
        auto r = run(spec, grid, control);
        benchmark::DoNotOptimize(r.report.final_sup_norm);
    }
}

}  // namespace

BENCHMARK(BM_Memory<memory_term_serial>)->Name("Memory/serial")->Apply(shapes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Memory<memory_term>)->Name("Memory/openmp")->Apply(shapes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NonlocalRun)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
