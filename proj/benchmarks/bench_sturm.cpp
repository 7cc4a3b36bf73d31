#include <benchmark/benchmark.h>

#include "dochar/spectral.hpp"

using namespace dochar;

static void BM_SturmCount(benchmark::State& state) {
  const FdOperator op([](double y) { return y * y; },
                      Discretization{12.0, static_cast<int>(state.range(0)), 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(op.sturm_count(7.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SturmCount)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

static void BM_Eigenvalue(benchmark::State& state) {
  const FdOperator op([](double y) { return y * y; }, Discretization{12.0, 16001, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(op.eigenvalue(4, 1e-10));
}
BENCHMARK(BM_Eigenvalue);

BENCHMARK_MAIN();
