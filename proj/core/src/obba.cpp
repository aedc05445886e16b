#include "borderforge/obba.hpp"

#include <algorithm>

#include "borderforge/errors.hpp"

namespace borderforge {

void OracleConfig::validate() const {
  if (!(gap_threshold > 0.0 && gap_threshold <= 1.0)) {
    throw ConfigError("gap threshold must lie in (0, 1], got " + std::to_string(gap_threshold));
  }
  if (truncation < 1) throw ConfigError("truncation must be at least 1");
}

OraclePrediction perfect_oracle_labels(const GeneratorSet& V, Variant base) {
  GeneratorSet copy = V;
  if (base == Variant::Bba) copy.reset_expansion_state();
  auto cands = expand_pairs(copy, standard_pairs(copy, base));
  return basis_extension(copy, cands, true).productive;
}

double relative_border_gap(const GeneratorSet& V) { return V.relative_gap(); }

namespace {

OraclePrediction all_pairs(const GeneratorSet& V) {
  OraclePrediction out;
  for (const auto* v : V.polynomials()) {
    for (std::size_t j = 1; j <= V.ring().nvars(); ++j) out.push_back({j, v->lt()});
  }
  return out;
}

}  // namespace

OraclePrediction FullOracle::predict(const OracleQuery& q) { return all_pairs(q.state); }

OraclePrediction RandomSubsetOracle::predict(const OracleQuery& q) {
  std::bernoulli_distribution keep(keep_);
  OraclePrediction out;
  for (const auto& p : all_pairs(q.state)) {
    if (keep(rng_)) out.push_back(p);
  }
  return out;
}

OraclePrediction AdversarialOracle::predict(const OracleQuery& q) {
  const auto good = perfect_oracle_labels(q.state, q.base);
  OraclePrediction out;
  for (const auto& p : all_pairs(q.state)) {
    if (std::find(good.begin(), good.end(), p) == good.end()) out.push_back(p);
  }
  // Leading terms outside the basis and an out-of-range variable.
  const Ring& ring = q.ring;
  for (const auto& t : q.state.universe().corners(ring)) {
    if (!q.state.has_leading_term(t)) {
      out.push_back({1, t});
      break;
    }
  }
  out.push_back({ring.nvars() + 1, ring.one()});
  return out;
}

OraclePrediction ReplayOracle::predict(const OracleQuery& q) {
  const auto key = view_key(make_view(q.state, q.truncation));
  auto it = table_.find(key);
  if (it == table_.end()) throw OracleUnavailable("replay table has no entry for this state");
  return it->second;
}

OraclePrediction RecordingOracle::predict(const OracleQuery& q) {
  OraclePrediction pairs = inner_->predict(q);
  log_.push_back({q.state.universe().degree(), make_view(q.state, q.truncation), pairs});
  return pairs;
}

SolveResult run_obba(const Ring& ring, const std::vector<Polynomial>& F, Oracle& oracle, const OracleConfig& config,
                     Variant base, Elimination elimination) {
  SolveConfig sc;
  sc.variant = base;
  sc.elimination = elimination;
  sc.oracle = &oracle;
  sc.oracle_config = config;
  return compute_border_basis(ring, F, sc);
}

}  // namespace borderforge
