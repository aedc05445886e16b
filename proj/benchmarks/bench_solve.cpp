#include <benchmark/benchmark.h>

#include "borderforge/obba.hpp"
#include "borderforge/sampling.hpp"

using namespace borderforge;

namespace {

std::vector<std::vector<Polynomial>> systems(const Ring& ring, std::size_t count) {
  std::vector<std::vector<Polynomial>> out;
  for (std::uint64_t seed = 0; seed < count; ++seed) out.push_back(generate_instance(ring, {}, seed).F);
  return out;
}

void BM_Solve(benchmark::State& state) {
  Ring ring(31, static_cast<std::size_t>(state.range(0)));
  SolveConfig c;
  c.variant = state.range(1) == 0 ? Variant::Bba : Variant::Ibba;
  c.elimination = state.range(2) == 0 ? Elimination::Fge : Elimination::Naive;
  const auto F = systems(ring, 8);
  for (auto _ : state) {
    for (const auto& f : F) benchmark::DoNotOptimize(compute_border_basis(ring, f, c));
  }
  state.SetLabel(to_string(c.variant) + (c.elimination == Elimination::Fge ? "+fge" : ""));
}

void BM_SolvePerfectOracle(benchmark::State& state) {
  Ring ring(31, static_cast<std::size_t>(state.range(0)));
  const auto F = systems(ring, 8);
  for (auto _ : state) {
    for (const auto& f : F) {
      PerfectOracle oracle;
      benchmark::DoNotOptimize(run_obba(ring, f, oracle));
    }
  }
}

}  // namespace

BENCHMARK(BM_Solve)->ArgsProduct({{2, 3, 4}, {0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolvePerfectOracle)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
