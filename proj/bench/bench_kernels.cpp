// Serial reference vs OpenMP kernels. Set OMP_NUM_THREADS to vary the thread count.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "affiso/circle_function.hpp"
#include "affiso/kernels.hpp"
#include "affiso/verify.hpp"

using namespace affiso;

namespace {

TrigCoefficients random_coefficients(int modes) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    TrigCoefficients c{std::vector<double>(modes + 1), std::vector<double>(modes + 1)};
    for (int k = 0; k <= modes; ++k) {
        c.cos[k] = n(rng) / (1.0 + k * k);
        c.sin[k] = k ? n(rng) / (1.0 + k * k) : 0.0;
    }
    return c;
}

std::vector<double> points(int n) {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = kTwoPi * (i + 0.37) / n;
    return p;
}

template <auto Kernel>
void eval_trig(benchmark::State& state) {
    const auto c = random_coefficients(static_cast<int>(state.range(1)));
    const auto p = points(static_cast<int>(state.range(0)));
    std::vector<double> v(p.size()), d(p.size());
    for (auto _ : state) {
        Kernel(c, p, v, d);
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

template <auto Kernel>
void atom_green_sum(benchmark::State& state) {
    const auto nodes = Grid(static_cast<int>(state.range(0))).nodes();
    const auto locations = points(static_cast<int>(state.range(1)));
    const std::vector<double> masses(locations.size(), 1.0);
    std::vector<double> out(nodes.size());
    for (auto _ : state) {
        Kernel(nodes, locations, masses, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

template <Execution Exec>
void sweep_bodies(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sweep(0, static_cast<int>(state.range(0)), Grid{}, {}, Exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(eval_trig<kernels::serial::eval_trig>)->Name("eval_trig/serial")->Args({8192, 64})->Args({8192, 512});
BENCHMARK(eval_trig<kernels::omp::eval_trig>)->Name("eval_trig/omp")->Args({8192, 64})->Args({8192, 512});
BENCHMARK(atom_green_sum<kernels::serial::atom_green_sum>)->Name("atom_green_sum/serial")->Args({2048, 64})->Args({8192, 512});
BENCHMARK(atom_green_sum<kernels::omp::atom_green_sum>)->Name("atom_green_sum/omp")->Args({2048, 64})->Args({8192, 512});
BENCHMARK(sweep_bodies<Execution::serial>)->Name("sweep/serial")->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(sweep_bodies<Execution::parallel>)->Name("sweep/parallel")->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
