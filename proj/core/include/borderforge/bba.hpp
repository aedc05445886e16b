#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "borderforge/linalg.hpp"
#include "borderforge/oracle.hpp"
#include "borderforge/order_ideal.hpp"
#include "borderforge/polynomial.hpp"

namespace borderforge {

/// Echelon generator set V inside a universe L, plus the expansion state of the
/// current universe: products already reduced and auxiliary reducers for
/// reductions that left L.
class GeneratorSet {
 public:
  GeneratorSet(const Ring& ring, Universe universe, Elimination mode = Elimination::Fge)
      : ring_(&ring), reducers_(ring, mode), universe_(universe) {}

  const Ring& ring() const noexcept { return *ring_; }
  const Universe& universe() const noexcept { return universe_; }
  ReducerSet& reducers() noexcept { return reducers_; }
  const ReducerSet& reducers() const noexcept { return reducers_; }

  std::size_t size() const noexcept { return reducers_.basis_size(); }
  /// Basis members, descending by leading term.
  std::vector<const Polynomial*> polynomials() const { return reducers_.basis(); }
  std::vector<Term> leading_terms() const;
  /// True when t is the leading term of a basis member.
  bool has_leading_term(const Term& t) const;

  /// |V| / |L|
  double relative_gap() const noexcept {
    return static_cast<double>(size()) / static_cast<double>(universe_.size());
  }

  bool is_expanded(const ExpansionPair& pair) const;
  void mark_expanded(const ExpansionPair& pair);
  /// Forgets expansion state (expanded products and auxiliary reducers).
  void reset_expansion_state();

  /// Degree bound d -> d + 1; resets expansion state, keeps the basis.
  void enlarge();

 private:
  const Ring* ring_;
  ReducerSet reducers_;
  Universe universe_;
  std::set<std::pair<std::uint64_t, std::size_t>> expanded_;
};

struct Candidate {
  ExpansionPair label;
  Polynomial poly;
};

/// All n * |V| products, descending lt(v) then variable ascending.
std::vector<Candidate> expand(const GeneratorSet& V);
/// Products for the given pairs in the same canonical order. Pairs naming no
/// basis member or an invalid variable are dropped and counted in `stale`.
std::vector<Candidate> expand_pairs(const GeneratorSet& V, std::vector<ExpansionPair> pairs,
                                    std::size_t* stale = nullptr);
/// Pairs a standard step of the given variant expands.
std::vector<ExpansionPair> standard_pairs(const GeneratorSet& V, Variant variant);

struct ExtensionResult {
  std::size_t candidates = 0;
  std::size_t new_elements = 0;
  std::size_t zero_reductions = 0;
  std::size_t out_of_universe = 0;
  std::uint64_t ops = 0;
  /// Labels whose products contributed to new basis elements, directly or
  /// through auxiliary reducers. Filled only when requested.
  std::vector<ExpansionPair> productive;
};

/// Reduces every candidate against V. Normal forms inside L join the basis,
/// nonzero normal forms outside L become auxiliary reducers.
ExtensionResult basis_extension(GeneratorSet& V, const std::vector<Candidate>& candidates,
                                bool track_productive = false);

/// Repeats expansion and basis extension until nothing new is added.
void lstable_span(GeneratorSet& V, Variant variant = Variant::Ibba);

/// border(L \ lt(V)) contained in L.
bool border_basis_check(const GeneratorSet& V);
void enlarge_universe(GeneratorSet& V);

struct BorderGenerator {
  Term border_term;
  Polynomial poly;

  friend bool operator==(const BorderGenerator&, const BorderGenerator&) = default;
};

/// O-border basis: one generator per border term, descending by border term.
/// The unit ideal is represented by O = {} and the single generator 1.
struct BorderBasis {
  OrderIdeal order_ideal;
  std::vector<BorderGenerator> generators;

  std::vector<Polynomial> polynomials() const;
  const Polynomial* find(const Term& border_term) const;

  friend bool operator==(const BorderBasis&, const BorderBasis&) = default;
};

/// Keys equal border(O); each generator is its border term plus a combination
/// of O. Sets `why` on failure.
bool satisfies_invariants(const Ring& ring, const BorderBasis& G, std::string* why = nullptr);
/// Normal form of f modulo the border prebasis (border division algorithm).
Polynomial border_normal_form(const Ring& ring, const BorderBasis& G, const Polynomial& f);
/// Stable content hash of O and the generators.
std::uint64_t basis_hash(const BorderBasis& G);

/// Throws MissingBorderGenerator when a border term of L \ lt(V) has no generator.
BorderBasis final_reduction(GeneratorSet& V, std::uint64_t* ops = nullptr);

enum class StepKind { Standard, Oracle, Certification };
std::string to_string(StepKind k);

struct IterationRecord {
  StepKind kind = StepKind::Standard;
  unsigned universe_degree = 0;
  std::size_t universe_size = 0;
  std::size_t basis_before = 0;
  std::size_t candidates = 0;
  std::size_t new_elements = 0;
  std::size_t zero_reductions = 0;
  std::size_t out_of_universe = 0;
  std::size_t stale_predictions = 0;
  std::uint64_t ops = 0;

  friend bool operator==(const IterationRecord&, const IterationRecord&) = default;
};

struct RunTrace {
  std::vector<IterationRecord> iterations;
  /// Index of the first iteration run in each enlarged universe.
  std::vector<std::size_t> enlargements;
  std::uint64_t init_ops = 0;
  std::uint64_t final_reduction_ops = 0;
  std::size_t fallbacks = 0;
  std::size_t oracle_calls = 0;
  std::size_t oracle_unavailable = 0;

  std::size_t final_stage_begin() const noexcept { return enlargements.empty() ? 0 : enlargements.back(); }
  std::uint64_t total_ops() const noexcept;
  std::uint64_t final_stage_ops() const noexcept;
  std::size_t total_zero_reductions() const noexcept;
  std::size_t final_stage_zero_reductions() const noexcept;

  friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

struct SolveConfig {
  Variant variant = Variant::Ibba;
  Elimination elimination = Elimination::Fge;
  /// Default max(2 d0, d0 + 10) where d0 is the largest input degree.
  std::optional<unsigned> degree_cap;
  Oracle* oracle = nullptr;  // OBBA when set
  OracleConfig oracle_config;
};

struct SolveResult {
  BorderBasis basis;
  RunTrace trace;
};

/// Border basis of <F>. Throws DegreeBudgetExceeded when the universe passes
/// the cap, which is how positive-dimensional input surfaces.
SolveResult compute_border_basis(const Ring& ring, const std::vector<Polynomial>& F,
                                 const SolveConfig& config = {});

}  // namespace borderforge
