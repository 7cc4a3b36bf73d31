#include <benchmark/benchmark.h>

#include "dochar/perturbation.hpp"

using namespace dochar;

static void BM_RsStep(benchmark::State& state) {
  const auto p = PerturbationProblem::make(4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rs_step(p, 2));
}
BENCHMARK(BM_RsStep)->DenseRange(0, 6, 2);

BENCHMARK_MAIN();
