#pragma once

#include <cstddef>
#include <span>
#include <unordered_set>
#include <vector>

#include "borderforge/polynomial.hpp"
#include "borderforge/term.hpp"

namespace borderforge {

/// Finite divisibility-closed set of terms with a cached descending view.
class OrderIdeal {
 public:
  OrderIdeal() = default;
  /// Throws NotAnOrderIdeal unless the set is divisibility-closed.
  OrderIdeal(const Ring& ring, std::vector<Term> terms);

  bool contains(const Term& t) const { return set_.contains(t); }
  std::size_t size() const noexcept { return sorted_.size(); }
  bool empty() const noexcept { return sorted_.empty(); }
  /// Descending in the ring order.
  const std::vector<Term>& terms() const noexcept { return sorted_; }

  friend bool operator==(const OrderIdeal& a, const OrderIdeal& b) { return a.sorted_ == b.sorted_; }

 private:
  std::unordered_set<Term, TermHash> set_;
  std::vector<Term> sorted_;
};

bool is_order_ideal(std::span<const Term> terms);

/// (x_1 O u ... u x_n O) \ O, descending. Empty for the empty ideal.
std::vector<Term> border(const Ring& ring, const OrderIdeal& O);
/// Divisibility-maximal elements, descending.
std::vector<Term> corner_terms(const Ring& ring, const OrderIdeal& O);
/// Union of the divisors of the given terms.
OrderIdeal reconstruct_from_corners(const Ring& ring, std::span<const Term> corners);

/// Every term of total degree <= degree.
class Universe {
 public:
  Universe(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {}

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return binomial(nvars_ + degree_, nvars_); }
  bool contains(const Term& t) const noexcept { return t.degree() <= degree_; }
  Universe enlarged() const noexcept { return Universe(nvars_, degree_ + 1); }

  std::vector<Term> terms(const Ring& ring) const;
  /// The degree-d terms, descending.
  std::vector<Term> corners(const Ring& ring) const;

  friend bool operator==(const Universe&, const Universe&) noexcept = default;

 private:
  std::size_t nvars_;
  unsigned degree_;
};

void sort_descending(const Ring& ring, std::vector<Term>& terms);

}  // namespace borderforge
