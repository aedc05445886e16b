#include "borderforge/bba.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "borderforge/errors.hpp"

namespace borderforge {

Variant parse_variant(const std::string& name) {
  if (name == "bba") return Variant::Bba;
  if (name == "ibba") return Variant::Ibba;
  throw ConfigError("unknown variant '" + name + "' (expected bba or ibba)");
}

std::string to_string(Variant v) { return v == Variant::Bba ? "bba" : "ibba"; }

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Standard:
      return "standard";
    case StepKind::Oracle:
      return "oracle";
    case StepKind::Certification:
      return "certification";
  }
  return "standard";
}

std::vector<Term> GeneratorSet::leading_terms() const {
  std::vector<Term> out;
  for (const auto* p : polynomials()) out.push_back(p->lt());
  return out;
}

bool GeneratorSet::has_leading_term(const Term& t) const {
  if (t.nvars() != ring_->nvars()) return false;
  const std::uint64_t k = ring_->key(t);
  return reducers_.find(k) != nullptr && !reducers_.is_auxiliary(k);
}

bool GeneratorSet::is_expanded(const ExpansionPair& pair) const {
  return expanded_.contains({ring_->key(pair.target_lt), pair.variable});
}

void GeneratorSet::mark_expanded(const ExpansionPair& pair) {
  expanded_.insert({ring_->key(pair.target_lt), pair.variable});
}

void GeneratorSet::reset_expansion_state() {
  expanded_.clear();
  reducers_.clear_auxiliary();
}

void GeneratorSet::enlarge() {
  universe_ = universe_.enlarged();
  reset_expansion_state();
}

std::vector<Candidate> expand(const GeneratorSet& V) {
  std::vector<ExpansionPair> pairs;
  for (const auto* v : V.polynomials()) {
    for (std::size_t j = 1; j <= V.ring().nvars(); ++j) pairs.push_back({j, v->lt()});
  }
  return expand_pairs(V, std::move(pairs));
}

std::vector<Candidate> expand_pairs(const GeneratorSet& V, std::vector<ExpansionPair> pairs, std::size_t* stale) {
  const Ring& ring = V.ring();
  std::size_t dropped = 0;
  std::erase_if(pairs, [&](const ExpansionPair& p) {
    const bool bad = p.variable < 1 || p.variable > ring.nvars() || !V.has_leading_term(p.target_lt);
    dropped += bad ? 1 : 0;
    return bad;
  });
  std::sort(pairs.begin(), pairs.end(), [&](const ExpansionPair& a, const ExpansionPair& b) {
    const auto ka = ring.key(a.target_lt), kb = ring.key(b.target_lt);
    return ka != kb ? ka > kb : a.variable < b.variable;
  });
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  if (stale != nullptr) *stale = dropped;

  std::vector<Candidate> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const Polynomial* v = V.reducers().find(p.target_lt);
    out.push_back({p, mul_term(ring, *v, ring.field().one(), ring.variable(p.variable - 1))});
  }
  return out;
}

std::vector<ExpansionPair> standard_pairs(const GeneratorSet& V, Variant variant) {
  std::vector<ExpansionPair> out;
  for (const auto* v : V.polynomials()) {
    for (std::size_t j = 1; j <= V.ring().nvars(); ++j) {
      ExpansionPair p{j, v->lt()};
      if (variant == Variant::Bba || !V.is_expanded(p)) out.push_back(p);
    }
  }
  return out;
}

ExtensionResult basis_extension(GeneratorSet& V, const std::vector<Candidate>& candidates, bool track_productive) {
  ExtensionResult res;
  ReducerSet& R = V.reducers();
  const std::uint64_t ops_before = R.stats().ops;
  const unsigned d = V.universe().degree();

  // Labels behind each auxiliary reducer created in this call.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> aux_deps;
  std::vector<bool> productive(candidates.size(), false);
  std::vector<std::uint64_t> used;

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Candidate& cand = candidates[c];
    V.mark_expanded(cand.label);
    ++res.candidates;
    used.clear();
    Polynomial nf = R.reduce(cand.poly, track_productive ? &used : nullptr);
    if (nf.is_zero()) {
      R.insert(nf);
      ++res.zero_reductions;
      continue;
    }
    std::vector<std::size_t> deps;
    if (track_productive) {
      deps.push_back(c);
      for (auto k : used) {
        auto it = aux_deps.find(k);
        if (it != aux_deps.end()) deps.insert(deps.end(), it->second.begin(), it->second.end());
      }
    }
    const std::uint64_t key = nf.leading().key;
    if (nf.degree() <= d) {
      R.insert(nf);
      ++res.new_elements;
      for (auto i : deps) productive[i] = true;
    } else {
      R.insert(nf, true);
      ++res.out_of_universe;
      if (track_productive) {
        std::sort(deps.begin(), deps.end());
        deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
        aux_deps.emplace(key, std::move(deps));
      }
    }
  }
  res.ops = R.stats().ops - ops_before;
  if (track_productive) {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (productive[c]) res.productive.push_back(candidates[c].label);
    }
  }
  return res;
}

void lstable_span(GeneratorSet& V, Variant variant) {
  while (true) {
    if (variant == Variant::Bba) V.reset_expansion_state();
    auto cands = expand_pairs(V, standard_pairs(V, variant));
    if (basis_extension(V, cands).new_elements == 0) return;
  }
}

bool border_basis_check(const GeneratorSet& V) {
  const unsigned d = V.universe().degree();
  for (const auto& t : terms_of_degree(V.ring().nvars(), d)) {
    if (!V.has_leading_term(t)) return false;
  }
  return true;
}

void enlarge_universe(GeneratorSet& V) { V.enlarge(); }

std::vector<Polynomial> BorderBasis::polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(g.poly);
  return out;
}

const Polynomial* BorderBasis::find(const Term& border_term) const {
  for (const auto& g : generators) {
    if (g.border_term == border_term) return &g.poly;
  }
  return nullptr;
}

bool satisfies_invariants(const Ring& ring, const BorderBasis& G, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  const OrderIdeal& O = G.order_ideal;
  if (!is_order_ideal(O.terms())) return fail("O is not an order ideal");
  if (O.empty()) {
    const bool unit = G.generators.size() == 1 &&
                      G.generators[0].poly == Polynomial::monomial(ring, ring.one(), ring.field().one());
    return unit || fail("empty order ideal without the unit generator");
  }
  const auto B = border(ring, O);
  if (B.size() != G.generators.size()) return fail("generator count differs from |border(O)|");
  for (std::size_t i = 0; i < B.size(); ++i) {
    const auto& g = G.generators[i];
    if (g.border_term != B[i]) return fail("generator keys differ from border(O) at " + format_term(B[i]));
    if (g.poly.coefficient(ring, g.border_term) != ring.field().one()) {
      return fail("generator for " + format_term(B[i]) + " does not have coefficient 1 on its border term");
    }
    for (const auto& m : g.poly) {
      if (m.term != g.border_term && !O.contains(m.term)) {
        return fail("term " + format_term(m.term) + " of the " + format_term(B[i]) + " generator is not in O");
      }
    }
  }
  return true;
}

Polynomial border_normal_form(const Ring& ring, const BorderBasis& G, const Polynomial& f) {
  const OrderIdeal& O = G.order_ideal;
  if (O.empty()) return Polynomial{};
  auto index_of = [&](const Term& t, Term* best) {
    unsigned max_deg = 0;
    bool found = false;
    for (const auto& o : O.terms()) {
      if ((!found || o.degree() > max_deg) && o.divides(t)) {
        max_deg = o.degree();
        *best = o;
        found = true;
      }
    }
    return t.degree() - max_deg;
  };
  Polynomial r = f;
  while (true) {
    const Monomial* pick = nullptr;
    unsigned pick_index = 0;
    Term pick_div;
    for (const auto& m : r) {
      if (O.contains(m.term)) continue;
      Term div;
      const unsigned ind = index_of(m.term, &div);
      if (pick == nullptr || ind > pick_index) {
        pick = &m;
        pick_index = ind;
        pick_div = div;
      }
    }
    if (pick == nullptr) return r;
    std::size_t var = 0;
    while (!pick_div.times_variable(var).divides(pick->term)) ++var;
    const Term b = pick_div.times_variable(var);
    const Polynomial* g = G.find(b);
    if (g == nullptr) throw MissingBorderGenerator("no generator for border term " + format_term(b));
    const Term u = pick->term.quotient(b);
    r = axpy(ring, r, pick->coeff, u, *g);
  }
}

std::uint64_t basis_hash(const BorderBasis& G) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& t : G.order_ideal.terms()) mix(t.raw());
  mix(0xFFFFFFFFFFFFFFFFULL);
  for (const auto& g : G.generators) {
    mix(g.border_term.raw());
    for (const auto& m : g.poly) {
      mix(m.term.raw());
      mix(m.coeff.v);
    }
  }
  return h;
}

BorderBasis final_reduction(GeneratorSet& V, std::uint64_t* ops) {
  const Ring& ring = V.ring();
  ReducerSet& R = V.reducers();
  const std::uint64_t before = R.stats().ops;
  std::vector<Term> rest;
  for (const auto& t : V.universe().terms(ring)) {
    if (!V.has_leading_term(t)) rest.push_back(t);
  }
  BorderBasis out;
  if (rest.empty()) {
    out.generators.push_back({ring.one(), Polynomial::monomial(ring, ring.one(), ring.field().one())});
    if (ops != nullptr) *ops = 0;
    return out;
  }
  out.order_ideal = OrderIdeal(ring, std::move(rest));
  for (const auto& b : border(ring, out.order_ideal)) {
    if (!V.has_leading_term(b)) {
      throw MissingBorderGenerator("no generator with leading term " + format_term(b));
    }
    const Polynomial* v = R.find(b);
    std::vector<Monomial> tail(v->terms().begin() + 1, v->terms().end());
    Polynomial reduced = R.reduce(Polynomial::from_sorted(std::move(tail)));
    std::vector<Monomial> g;
    g.reserve(reduced.size() + 1);
    g.push_back(v->leading());
    g.insert(g.end(), reduced.begin(), reduced.end());
    out.generators.push_back({b, Polynomial::from_sorted(std::move(g))});
  }
  if (ops != nullptr) *ops = R.stats().ops - before;
  return out;
}

std::uint64_t RunTrace::total_ops() const noexcept {
  std::uint64_t s = init_ops + final_reduction_ops;
  for (const auto& it : iterations) s += it.ops;
  return s;
}

std::uint64_t RunTrace::final_stage_ops() const noexcept {
  std::uint64_t s = final_reduction_ops;
  for (std::size_t i = final_stage_begin(); i < iterations.size(); ++i) s += iterations[i].ops;
  return s;
}

std::size_t RunTrace::total_zero_reductions() const noexcept {
  std::size_t s = 0;
  for (const auto& it : iterations) s += it.zero_reductions;
  return s;
}

std::size_t RunTrace::final_stage_zero_reductions() const noexcept {
  std::size_t s = 0;
  for (std::size_t i = final_stage_begin(); i < iterations.size(); ++i) s += iterations[i].zero_reductions;
  return s;
}

SolveResult compute_border_basis(const Ring& ring, const std::vector<Polynomial>& F, const SolveConfig& config) {
  unsigned d0 = 0;
  for (const auto& f : F) d0 = std::max(d0, f.degree());
  const unsigned cap = config.degree_cap.value_or(std::max(2 * d0, d0 + 10));
  Oracle* oracle = config.oracle;
  const OracleConfig& oc = config.oracle_config;
  if (oracle != nullptr) oc.validate();

  SolveResult result;
  RunTrace& trace = result.trace;
  GeneratorSet V(ring, Universe(ring.nvars(), d0), config.elimination);
  ReducerSet& R = V.reducers();
  for (const auto& f : F) R.insert(R.reduce(f));
  trace.init_ops = R.stats().ops;

  std::size_t budget_used = 0;
  bool reverted = false;
  bool oracle_since_full = false;

  while (true) {
    if (V.universe().degree() > cap) {
      throw DegreeBudgetExceeded("universe degree " + std::to_string(V.universe().degree()) + " exceeds cap " +
                                 std::to_string(cap) + "; the ideal is likely not zero-dimensional");
    }
    if (config.variant == Variant::Bba) V.reset_expansion_state();

    IterationRecord rec;
    rec.universe_degree = V.universe().degree();
    rec.universe_size = V.universe().size();
    rec.basis_before = V.size();

    std::vector<ExpansionPair> pairs;
    bool have_pairs = false;
    if (oracle != nullptr && !reverted) {
      if (oracle_since_full && budget_used >= oc.budget) {
        rec.kind = StepKind::Certification;
      } else if (budget_used < oc.budget && V.relative_gap() >= oc.gap_threshold) {
        try {
          pairs = oracle->predict(OracleQuery{ring, V, config.variant, oc.truncation});
          ++trace.oracle_calls;
          ++budget_used;
          rec.kind = pairs.empty() ? StepKind::Certification : StepKind::Oracle;
          have_pairs = !pairs.empty();
        } catch (const OracleUnavailable&) {
          ++trace.oracle_unavailable;
          rec.kind = StepKind::Standard;
        }
      }
    }
    if (!have_pairs) pairs = standard_pairs(V, config.variant);

    auto cands = expand_pairs(V, std::move(pairs), &rec.stale_predictions);
    const ExtensionResult ext = basis_extension(V, cands);
    rec.candidates = ext.candidates;
    rec.new_elements = ext.new_elements;
    rec.zero_reductions = ext.zero_reductions;
    rec.out_of_universe = ext.out_of_universe;
    rec.ops = ext.ops;
    trace.iterations.push_back(rec);

    if (rec.kind == StepKind::Oracle) {
      oracle_since_full = true;
      continue;
    }
    oracle_since_full = false;
    if (rec.kind == StepKind::Certification && rec.new_elements > 0) {
      reverted = true;
      ++trace.fallbacks;
    }
    if (rec.new_elements > 0) continue;
    if (!border_basis_check(V)) {
      V.enlarge();
      trace.enlargements.push_back(trace.iterations.size());
      budget_used = 0;
      continue;
    }
    break;
  }
  result.basis = final_reduction(V, &trace.final_reduction_ops);
  return result;
}

}  // namespace borderforge
