// Serial vs OpenMP pattern-table kernel on random CNF instances.

#include <benchmark/benchmark.h>

#include "abd/harness.hpp"

namespace {

abd::AbductionInstance instance(unsigned n) {
  abd::GenParams p;
  p.family = "cnf";
  p.n = n;
  p.k = 3;
  p.seed = abd::kDefaultSeed;
  return abd::generate(p).instance;
}

void BM_PatternSerial(benchmark::State& state) {
  const auto inst = instance(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(abd::pattern_table_serial(inst));
  state.SetComplexityN(state.range(0));
}

void BM_PatternParallel(benchmark::State& state) {
  const auto inst = instance(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(abd::pattern_table_parallel(inst));
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_PatternSerial)->DenseRange(12, 20, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PatternParallel)->DenseRange(12, 20, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
