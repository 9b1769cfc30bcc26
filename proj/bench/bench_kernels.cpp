// Serial reference vs OpenMP kernels. Arg 0 selects the path (0 serial, 1 parallel).
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "negmass/kernels/pair_forces.hpp"
#include "negmass/kernels/sphere_pairs.hpp"
#include "negmass/kernels/stencil.hpp"

using namespace negmass::kernels;

namespace {

Execution exec_of(const benchmark::State& state)
{
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state)
{
    state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(max_threads()));
}

void BM_PairForces(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(1));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<double> x(3 * n), m(n), q(n), f(3 * n);
    for (auto& v : x)
        v = u(rng);
    for (std::size_t i = 0; i < n; ++i)
    {
        m[i] = i % 3 == 0 ? -1.0 : 1.0;
        q[i] = 0.1 * u(rng);
    }
    const ForceLaw law{1.0, 1.0, true, true};
    for (auto _ : state)
    {
        pair_forces(x, m, q, law, f, exec_of(state));
        benchmark::DoNotOptimize(f.data());
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(n * (n - 1) / 2));
    label(state);
}
BENCHMARK(BM_PairForces)->ArgsProduct({{0, 1}, {256, 2048}})->Unit(benchmark::kMillisecond);

void BM_SphereMonteCarlo(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(mean_inverse_distance(n, 1.0, 42, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * std::int64_t(n));
    label(state);
}
BENCHMARK(BM_SphereMonteCarlo)->ArgsProduct({{0, 1}, {100000, 1000000}})->Unit(benchmark::kMillisecond);

void BM_Stencil(benchmark::State& state)
{
    const CubeLayout lay{static_cast<std::size_t>(state.range(1)), 4};
    std::vector<std::complex<double>> in(lay.values()), out(lay.values());
    for (std::size_t i = 0; i < in.size(); ++i)
        in[i] = {std::sin(0.001 * double(i)), std::cos(0.002 * double(i))};
    for (auto _ : state)
    {
        central_derivative(in, out, lay, 1, 0.1, 8, exec_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(lay.points()));
    label(state);
}
BENCHMARK(BM_Stencil)->ArgsProduct({{0, 1}, {32, 96}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
