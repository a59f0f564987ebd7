#include <algorithm>

#include <benchmark/benchmark.h>

#include "cortex/config.hpp"
#include "cortex/simulation.hpp"
#include "cortex/statistics.hpp"

namespace {

cortex::SampleContext context() {
    const auto cfg = cortex::default_scoring_config();
    cortex::SimulationConfig sim;
    return cortex::make_context("prompt-injection", 5, 4, cfg.modifiers, cfg.weights, cfg.params, sim);
}

void BM_KernelSerial(benchmark::State& state) {
    const auto ctx = context();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cortex::simulate_kernel_serial(ctx, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_KernelParallel(benchmark::State& state) {
    const auto ctx = context();
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cortex::simulate_kernel(ctx, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<double> sorted_samples(std::uint64_t n) {
    auto xs = cortex::simulate_kernel_serial(context(), n);
    std::sort(xs.begin(), xs.end());
    return xs;
}

void BM_KdeSerial(benchmark::State& state) {
    const auto xs = sorted_samples(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cortex::kde_serial(xs, 256));
}

void BM_KdeParallel(benchmark::State& state) {
    const auto xs = sorted_samples(static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cortex::kde(xs, 256));
}

}  // namespace

BENCHMARK(BM_KernelSerial)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelParallel)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KdeSerial)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KdeParallel)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
