#include "borderforge/order_ideal.hpp"

#include <algorithm>

#include "borderforge/errors.hpp"

namespace borderforge {

void sort_descending(const Ring& ring, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return ring.key(a) > ring.key(b); });
}

OrderIdeal::OrderIdeal(const Ring& ring, std::vector<Term> terms) {
  for (const auto& t : terms) {
    ring.check(t);
    set_.insert(t);
  }
  sorted_.assign(set_.begin(), set_.end());
  sort_descending(ring, sorted_);
  if (!is_order_ideal(sorted_)) throw NotAnOrderIdeal("term set is not closed under division");
}

bool is_order_ideal(std::span<const Term> terms) {
  std::unordered_set<Term, TermHash> set(terms.begin(), terms.end());
  for (const auto& t : terms) {
    for (std::size_t i = 0; i < t.nvars(); ++i) {
      if (t.exponent(i) > 0 && !set.contains(t.divided_by_variable(i))) return false;
    }
  }
  return true;
}

std::vector<Term> border(const Ring& ring, const OrderIdeal& O) {
  std::unordered_set<Term, TermHash> out;
  for (const auto& t : O.terms()) {
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
      Term s = t.times_variable(i);
      if (!O.contains(s)) out.insert(s);
    }
  }
  std::vector<Term> v(out.begin(), out.end());
  sort_descending(ring, v);
  return v;
}

std::vector<Term> corner_terms(const Ring& ring, const OrderIdeal& O) {
  std::vector<Term> out;
  for (const auto& t : O.terms()) {
    bool maximal = true;
    for (std::size_t i = 0; i < ring.nvars() && maximal; ++i) {
      if (t.exponent(i) < kMaxExponent && O.contains(t.times_variable(i))) maximal = false;
    }
    if (maximal) out.push_back(t);
  }
  return out;
}

OrderIdeal reconstruct_from_corners(const Ring& ring, std::span<const Term> corners) {
  std::unordered_set<Term, TermHash> seen;
  std::vector<Term> stack;
  for (const auto& c : corners) {
    ring.check(c);
    if (seen.insert(c).second) stack.push_back(c);
  }
  while (!stack.empty()) {
    const Term t = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < t.nvars(); ++i) {
      if (t.exponent(i) == 0) continue;
      const Term d = t.divided_by_variable(i);
      if (seen.insert(d).second) stack.push_back(d);
    }
  }
  return OrderIdeal(ring, std::vector<Term>(seen.begin(), seen.end()));
}

std::vector<Term> Universe::terms(const Ring& ring) const {
  auto out = terms_up_to_degree(nvars_, degree_);
  sort_descending(ring, out);
  return out;
}

std::vector<Term> Universe::corners(const Ring& ring) const {
  auto out = terms_of_degree(nvars_, degree_);
  sort_descending(ring, out);
  return out;
}

}  // namespace borderforge
