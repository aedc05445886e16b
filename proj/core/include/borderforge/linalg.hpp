#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "borderforge/polynomial.hpp"

namespace borderforge {

enum class Elimination { Fge, Naive };

Elimination parse_elimination(const std::string& name);
std::string to_string(Elimination e);

struct EliminationStats {
  std::uint64_t ops = 0;              // coefficient multiply-adds
  std::uint64_t zero_reductions = 0;  // insert() calls with a zero polynomial
  std::uint64_t insertions = 0;
  std::uint64_t steps = 0;            // reducer applications
};

/// Echelon set of monic polynomials keyed by leading term.
///
/// Fge looks reducers up in an ordered map and works on sparse rows. Naive is
/// dense row elimination: every reduction scans all stored reducers and
/// subtracts full-width rows. Auxiliary entries take part in reduction but are not basis members and can
/// be dropped in bulk.
class ReducerSet {
 public:
  explicit ReducerSet(const Ring& ring, Elimination mode = Elimination::Fge) : ring_(&ring), mode_(mode) {}

  /// Full tail reduction. When `used` is given, appends the keys of every reducer applied.
  Polynomial reduce(const Polynomial& f, std::vector<std::uint64_t>* used = nullptr);

  /// Makes f monic and stores it. Returns false for f = 0 (a zero reduction).
  /// Throws DuplicateLeadingTerm when lt(f) is already a key.
  bool insert(const Polynomial& f, bool auxiliary = false);

  const Polynomial* find(std::uint64_t key) const;
  const Polynomial* find(const Term& t) const { return find(ring_->key(t)); }
  bool is_auxiliary(std::uint64_t key) const;

  /// Basis (non-auxiliary) members, descending by leading term.
  std::vector<const Polynomial*> basis() const;
  std::size_t basis_size() const noexcept { return basis_count_; }
  std::size_t auxiliary_size() const noexcept { return index_.size() - basis_count_; }
  void clear_auxiliary();

  const Ring& ring() const noexcept { return *ring_; }
  Elimination mode() const noexcept { return mode_; }
  const EliminationStats& stats() const noexcept { return stats_; }
  void reset_stats() noexcept { stats_ = {}; }

 private:
  struct Entry {
    Polynomial poly;
    bool auxiliary = false;
    std::size_t pivot = 0;   // dense column of the leading term
    std::vector<Fp> dense;   // Naive only; width at insertion time
  };

  const Entry* lookup(std::uint64_t key) const;
  Polynomial reduce_dense(const Polynomial& f, std::vector<std::uint64_t>* used);
  std::size_t column(const Monomial& m);
  void densify(Entry& e);
  void rebuild_order();

  const Ring* ring_;
  Elimination mode_;
  std::map<std::uint64_t, std::size_t> index_;  // key -> slot in entries_
  std::vector<Entry> entries_;
  std::size_t basis_count_ = 0;
  EliminationStats stats_;
  std::unordered_map<std::uint64_t, std::size_t> columns_;  // key -> column
  std::vector<Monomial> column_terms_;
  std::vector<Monomial> work_, next_;  // Fge merge buffers
  std::vector<std::size_t> order_;  // Naive: slots by descending key
};

/// Reference eliminator over an echelon list. With an rng, applicable reducers
/// are chosen in random order instead of by descending leading term.
Polynomial reduce_full_naive(const Ring& ring, const Polynomial& f, std::span<const Polynomial> reducers,
                             std::mt19937_64* rng = nullptr);

/// Dense row-major matrix over F_p.
class MatrixFp {
 public:
  MatrixFp() = default;
  MatrixFp(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Fp& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Fp at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fp> data_;
};

/// Reduced row echelon form in place, pivoting on the lowest available column.
/// Returns the pivot column of each nonzero row.
std::vector<std::size_t> rref(const PrimeField& F, MatrixFp& m);
std::size_t rank(const PrimeField& F, MatrixFp m);
/// Basis of {v : Mv = 0}, one vector per free column in increasing column order.
std::vector<std::vector<Fp>> nullspace(const PrimeField& F, const MatrixFp& m);

}  // namespace borderforge
