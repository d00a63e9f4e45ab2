// Serial reference vs OpenMP kernels of the exhaustive search.

#include <benchmark/benchmark.h>

#include "manna/generate.hpp"
#include "manna/market.hpp"
#include "manna/search.hpp"

namespace {

manna::Instance bench_instance(std::size_t agents, std::size_t items) {
    manna::GenConfig cfg;
    cfg.agents = agents;
    cfg.items = items;
    cfg.seed = 20240601;
    return manna::generate_instance(cfg);
}

void BM_FindWef1Serial(benchmark::State& state) {
    const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(manna::search::serial::find_allocations(inst, manna::Notion::WEF1));
}

void BM_FindWef1Parallel(benchmark::State& state) {
    const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(manna::search::find_allocations(inst, manna::Notion::WEF1));
}

void BM_ParetoSerial(benchmark::State& state) {
    const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    // welfare-maximizing allocations are PO, so the whole space is scanned
    const auto alloc = manna::construct_welfare_equilibrium(inst).allocation();
    for (auto _ : state) benchmark::DoNotOptimize(manna::search::serial::is_pareto_optimal_integral(inst, alloc));
}

void BM_ParetoParallel(benchmark::State& state) {
    const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    // welfare-maximizing allocations are PO, so the whole space is scanned
    const auto alloc = manna::construct_welfare_equilibrium(inst).allocation();
    for (auto _ : state) benchmark::DoNotOptimize(manna::search::is_pareto_optimal_integral(inst, alloc));
}

}  // namespace

BENCHMARK(BM_FindWef1Serial)->Args({2, 10})->Args({3, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FindWef1Parallel)->Args({2, 10})->Args({3, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParetoSerial)->Args({2, 12})->Args({4, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParetoParallel)->Args({2, 12})->Args({4, 6})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
