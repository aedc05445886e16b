#include <gtest/gtest.h>

#include <algorithm>

#include "borderforge/errors.hpp"
#include "borderforge/obba.hpp"
#include "borderforge/sampling.hpp"

using namespace borderforge;

namespace {

Polynomial P(const Ring& ring, const char* text) { return parse_polynomial(ring, text); }

GeneratorSet worked_state(const Ring& ring) {
  GeneratorSet V(ring, Universe(2, 2));
  V.reducers().insert(P(ring, "x1^2 + x2^2 - 1"));
  V.reducers().insert(P(ring, "x1 - 1"));
  return V;
}

bool same_set(OraclePrediction a, OraclePrediction b) {
  auto less = [](const ExpansionPair& x, const ExpansionPair& y) {
    return std::make_pair(x.target_lt.raw(), x.variable) < std::make_pair(y.target_lt.raw(), y.variable);
  };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  return a == b;
}

std::size_t basis_rank_union(const Ring& ring, const GeneratorSet& A, const GeneratorSet& B) {
  ReducerSet R(ring);
  for (const auto* p : A.polynomials()) R.insert(R.reduce(*p));
  std::size_t extra = 0;
  for (const auto* p : B.polynomials()) extra += R.insert(R.reduce(*p));
  return extra;
}

}  // namespace

TEST(Obba, PerfectLabelsOnWorkedState) {
  Ring ring(7, 2);
  const auto V = worked_state(ring);
  EXPECT_TRUE(same_set(perfect_oracle_labels(V), {{1, Term{1, 0}}, {2, Term{1, 0}}}));
  EXPECT_TRUE(same_set(perfect_oracle_labels(V, Variant::Bba), {{1, Term{1, 0}}, {2, Term{1, 0}}}));
}

TEST(Obba, PerfectLabelsEmptyWhenStable) {
  Ring ring(7, 2);
  auto V = worked_state(ring);
  lstable_span(V);
  EXPECT_TRUE(perfect_oracle_labels(V).empty());
  EXPECT_TRUE(perfect_oracle_labels(V, Variant::Bba).empty());
}

TEST(Obba, FullOracleNamesEveryPair) {
  Ring ring(7, 2);
  const auto V = worked_state(ring);
  FullOracle full;
  const auto pairs = full.predict({ring, V, Variant::Ibba, 5});
  EXPECT_EQ(pairs.size(), 4u);
  EmptyOracle empty;
  EXPECT_TRUE(empty.predict({ring, V, Variant::Ibba, 5}).empty());
}

TEST(Obba, RelativeBorderGap) {
  Ring ring(7, 2);
  GeneratorSet empty(ring, Universe(2, 2));
  EXPECT_DOUBLE_EQ(relative_border_gap(empty), 0.0);
  auto V = worked_state(ring);
  lstable_span(V);
  EXPECT_DOUBLE_EQ(relative_border_gap(V), 2.0 / 3.0);
  const auto r = compute_border_basis(ring, {P(ring, "x1^2 + x2^2 - 1"), P(ring, "x1 - 1")});
  EXPECT_EQ(V.size(), V.universe().size() - r.basis.order_ideal.size());
}

TEST(Obba, PerfectLabelsSpanTheFullExtension) {
  for (std::size_t n : {2u, 3u}) {
    Ring ring(31, n);
    int states = 0;
    for (std::uint64_t seed = 0; states < 100; ++seed) {
      const auto inst = generate_instance(ring, {}, seed);
      unsigned d0 = 0;
      for (const auto& f : inst.F) d0 = std::max(d0, f.degree());
      GeneratorSet V(ring, Universe(n, d0));
      for (const auto& f : inst.F) V.reducers().insert(V.reducers().reduce(f));
      for (int step = 0; step < 4; ++step, ++states) {
        GeneratorSet all = V, labeled = V;
        const auto labels = perfect_oracle_labels(V);
        basis_extension(all, expand_pairs(all, standard_pairs(all, Variant::Ibba)));
        basis_extension(labeled, expand_pairs(labeled, labels));
        ASSERT_EQ(all.size(), labeled.size());
        ASSERT_EQ(basis_rank_union(ring, all, labeled), 0u);
        ASSERT_EQ(basis_rank_union(ring, labeled, all), 0u);
        V = all;
      }
    }
  }
}

TEST(Obba, ZeroBudgetMatchesIbba) {
  Ring ring(31, 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_instance(ring, {}, seed);
    PerfectOracle oracle;
    OracleConfig oc;
    oc.budget = 0;
    const auto a = run_obba(ring, inst.F, oracle, oc);
    const auto b = compute_border_basis(ring, inst.F);
    ASSERT_EQ(a.basis, b.basis);
    ASSERT_EQ(a.trace, b.trace);
  }
}

TEST(Obba, EmptyOracleFallsBack) {
  Ring ring(31, 3);
  std::size_t fallbacks = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = generate_instance(ring, {}, seed);
    EmptyOracle oracle;
    OracleConfig oc;
    oc.gap_threshold = 0.01;
    const auto a = run_obba(ring, inst.F, oracle, oc);
    ASSERT_EQ(a.basis, compute_border_basis(ring, inst.F).basis);
    fallbacks += a.trace.fallbacks;
  }
  EXPECT_GT(fallbacks, 0u);
}

TEST(Obba, CorrectUnderEveryOracleAndRespectsGates) {
  Ring ring(31, 3);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto inst = generate_instance(ring, {}, seed);
    SolveConfig bba;
    bba.variant = Variant::Bba;
    const auto expected = compute_border_basis(ring, inst.F, bba).basis;
    for (const char* name : {"perfect", "empty", "random", "adversarial", "full"}) {
      auto oracle = make_oracle(name, seed);
      OracleConfig oc;
      const auto r = run_obba(ring, inst.F, *oracle, oc);
      ASSERT_EQ(r.basis, expected) << name << " seed " << seed;
      std::size_t run = 0, per_universe = 0;
      unsigned degree = 0;
      for (const auto& it : r.trace.iterations) {
        if (it.universe_degree != degree) {
          degree = it.universe_degree;
          per_universe = 0;
        }
        if (it.kind != StepKind::Standard) {
          ASSERT_GE(static_cast<double>(it.basis_before) / static_cast<double>(it.universe_size),
                    oc.gap_threshold);
        }
        if (it.kind == StepKind::Oracle) {
          ++per_universe;
          ASSERT_LE(++run, oc.budget);
        } else {
          run = 0;
        }
        ASSERT_LE(per_universe, oc.budget);
      }
    }
  }
}

TEST(Obba, PerfectOracleStepsHaveNoZeroReductions) {
  Ring ring(31, 3);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = generate_instance(ring, {}, seed);
    PerfectOracle oracle;
    const auto r = run_obba(ring, inst.F, oracle);
    EXPECT_EQ(r.trace.fallbacks, 0u);
    for (const auto& it : r.trace.iterations) {
      if (it.kind == StepKind::Oracle) {
        ASSERT_EQ(it.zero_reductions, 0u);
        ASSERT_EQ(it.stale_predictions, 0u);
      }
    }
  }
}

TEST(Obba, ReplayMissFallsBackToStandardStep) {
  Ring ring(7, 2);
  ReplayOracle replay;
  const auto r = run_obba(ring, {P(ring, "x1^2 + x2^2 - 1"), P(ring, "x1 - 1")}, replay, {5, 0.1, 5});
  EXPECT_EQ(r.trace.oracle_calls, 0u);
  EXPECT_GT(r.trace.oracle_unavailable, 0u);
  EXPECT_EQ(r.basis.order_ideal.size(), 2u);
}

TEST(Obba, ConfigValidation) {
  OracleConfig oc;
  EXPECT_NO_THROW(oc.validate());
  oc.gap_threshold = 0.0;
  EXPECT_THROW(oc.validate(), ConfigError);
  oc.gap_threshold = 1.5;
  EXPECT_THROW(oc.validate(), ConfigError);
  oc = {};
  oc.truncation = 0;
  EXPECT_THROW(oc.validate(), ConfigError);
  EXPECT_THROW(make_oracle("oracle9000"), ConfigError);
  EXPECT_EQ(make_oracle("none"), nullptr);
}
