#include <benchmark/benchmark.h>

#include "borderforge/linalg.hpp"
#include "borderforge/sampling.hpp"

using namespace borderforge;

namespace {

void BM_Reduce(benchmark::State& state) {
  const auto mode = state.range(0) == 0 ? Elimination::Fge : Elimination::Naive;
  Ring ring(31, 4);
  Rng rng(3);
  ReducerSet R(ring, mode);
  while (R.basis_size() < static_cast<std::size_t>(state.range(1))) R.insert(R.reduce(random_polynomial(ring, 3, 12, rng)));
  std::vector<Polynomial> queries;
  for (int i = 0; i < 64; ++i) queries.push_back(random_polynomial(ring, 3, 12, rng));
  for (auto _ : state) {
    for (const auto& q : queries) benchmark::DoNotOptimize(R.reduce(q));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(queries.size()));
  state.SetLabel(mode == Elimination::Fge ? "fge" : "naive");
}

}  // namespace

BENCHMARK(BM_Reduce)->ArgsProduct({{0, 1}, {16, 32}});
