#include <benchmark/benchmark.h>

#include "dochar/wave_packet.hpp"

using namespace dochar;

static void BM_PacketPoint(benchmark::State& state) {
  const WavePacket wp({static_cast<double>(state.range(0)), 2});
  const double x = wp.x_lambda();
  for (auto _ : state) benchmark::DoNotOptimize(wp.evaluate(x, 0.0, 0.0));
}
BENCHMARK(BM_PacketPoint)->Arg(16)->Arg(64)->Arg(256);

static void BM_PacketGrid(benchmark::State& state) {
  const WavePacket wp({64.0, 2});
  const Superposition s = wp.superposition(2);
  const double x = wp.x_lambda();
  const auto xs = linspace(x - 0.1, x + 0.1, 17);
  const auto ys = linspace(-0.1, 0.1, 17);
  const auto ts = linspace(-0.1, 0.1, 17);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_fields(s, xs, ys, ts));
}
BENCHMARK(BM_PacketGrid);

BENCHMARK_MAIN();
