// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "nqa/grid.hpp"
#include "nqa/kernel.hpp"
#include "nqa/solver.hpp"
#include "nqa/system.hpp"

using namespace nqa;

namespace {

Execution exec_of(const benchmark::State& state)
{
    return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state)
{
    state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
}

void BM_BuildKernels(benchmark::State& state)
{
    const MomentumGrid grid = build_grid(state.range(0), {MappingType::rational, 1.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_kernels(2, grid, exec_of(state)));
    }
    label(state);
}

void BM_LandeSubtraction(benchmark::State& state)
{
    const MomentumGrid grid = build_grid(state.range(0), {MappingType::rational, 1.0});
    const PartialWaveKernel K = build_kernel(0, grid);
    const Measure mu = [](double p) { return p * p / (2.0 * std::hypot(p, 1.0)); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(lande_subtraction(K, grid, mu, exec_of(state)));
    }
    label(state);
}

void BM_Assemble(benchmark::State& state)
{
    const TwoBodySystem sys = make_preset("hydrogen-e");
    auto grid = std::make_shared<const MomentumGrid>(build_grid(state.range(0), default_mapping(sys)));
    AssemblyOptions opt;
    opt.exec = exec_of(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble(sys, {1, 1, 0, 1, 1}, grid, opt));
    }
    label(state);
}

} // namespace

BENCHMARK(BM_BuildKernels)->ArgsProduct({{400, 1200}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LandeSubtraction)->ArgsProduct({{400, 1200}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Assemble)->ArgsProduct({{400, 1200}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
