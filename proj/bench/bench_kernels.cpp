#include <benchmark/benchmark.h>

#include <map>

#include "bhlab/kernels.hpp"
#include "bhlab/polynomial.hpp"

namespace {

using namespace bhlab;

const DenseMonomials& sample(int m, int n) {
  static std::map<std::pair<int, int>, DenseMonomials> cache;
  auto it = cache.find({m, n});
  if (it == cache.end())
    it = cache.emplace(std::make_pair(m, n), DenseMonomials(random_polynomial(m, n, Ensemble::steinhaus, 7))).first;
  return it->second;
}

void BM_PowerMeanSerial(benchmark::State& state) {
  const auto& p = sample(static_cast<int>(state.range(0)), 3);
  const int nodes = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::serial::torus_power_mean(p, 1.0, nodes, {}));
  state.SetItemsProcessed(state.iterations() * nodes * nodes * nodes);
}

void BM_PowerMeanOmp(benchmark::State& state) {
  const auto& p = sample(static_cast<int>(state.range(0)), 3);
  const int nodes = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::omp::torus_power_mean(p, 1.0, nodes, {}, 0));
  state.SetItemsProcessed(state.iterations() * nodes * nodes * nodes);
}

void BM_TopKSerial(benchmark::State& state) {
  const auto& p = sample(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::serial::grid_top_k(p, static_cast<int>(state.range(1)), {}, 4));
}

void BM_TopKOmp(benchmark::State& state) {
  const auto& p = sample(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::omp::grid_top_k(p, static_cast<int>(state.range(1)), {}, 4, 0));
}

void BM_MonteCarloSerial(benchmark::State& state) {
  const auto& p = sample(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::serial::monte_carlo_power_mean(p, 1.0, state.range(1), 1, {}));
}

void BM_MonteCarloOmp(benchmark::State& state) {
  const auto& p = sample(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::omp::monte_carlo_power_mean(p, 1.0, state.range(1), 1, {}, 0));
}

} // namespace

BENCHMARK(BM_PowerMeanSerial)->Args({2, 32})->Args({4, 32})->Args({4, 64});
BENCHMARK(BM_PowerMeanOmp)->Args({2, 32})->Args({4, 32})->Args({4, 64});
BENCHMARK(BM_TopKSerial)->Args({3, 24});
BENCHMARK(BM_TopKOmp)->Args({3, 24});
BENCHMARK(BM_MonteCarloSerial)->Args({4, 1 << 14});
BENCHMARK(BM_MonteCarloOmp)->Args({4, 1 << 14});

BENCHMARK_MAIN();
