#include <benchmark/benchmark.h>

#include "borderforge/sampling.hpp"

using namespace borderforge;

namespace {

void BM_SampleOrderIdeal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Ring ring(31, n);
  Rng rng(1);
  const std::vector<unsigned> caps(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sample_order_ideal(ring, caps, rng));
}

void BM_GenerateInstance(benchmark::State& state) {
  Ring ring(31, static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_instance(ring, {}, seed++));
}

}  // namespace

BENCHMARK(BM_SampleOrderIdeal)->DenseRange(2, 5);
BENCHMARK(BM_GenerateInstance)->DenseRange(2, 4)->Unit(benchmark::kMicrosecond);
