#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "borderforge/field.hpp"
#include "borderforge/term.hpp"

namespace borderforge {

/// Computation context: coefficient field, number of variables, term order.
class Ring {
 public:
  /// Throws DimensionMismatch unless 1 <= nvars <= kMaxVars.
  Ring(PrimeField field, std::size_t nvars, TermOrder order = TermOrder::DegRevLex);
  Ring(std::uint32_t p, std::size_t nvars, TermOrder order = TermOrder::DegRevLex)
      : Ring(PrimeField(p), nvars, order) {}

  const PrimeField& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  TermOrder order() const noexcept { return order_; }

  std::uint64_t key(const Term& t) const noexcept { return order_key(order_, t); }
  /// key(a * b) == shift_key(key(a), key(b)).
  std::uint64_t shift_key(std::uint64_t a, std::uint64_t b) const noexcept { return a + b - unit_key_; }
  bool greater(const Term& a, const Term& b) const noexcept { return key(a) > key(b); }

  Term one() const { return Term::one(nvars_); }
  Term variable(std::size_t index) const { return Term::variable(nvars_, index); }

  /// Throws DimensionMismatch when t is over a different number of variables.
  void check(const Term& t) const;

 private:
  PrimeField field_;
  std::size_t nvars_;
  TermOrder order_;
  std::uint64_t unit_key_;
};

struct Monomial {
  std::uint64_t key = 0;  // ring order key of term
  Term term;
  Fp coeff;

  friend bool operator==(const Monomial&, const Monomial&) noexcept = default;
};

/// Sparse polynomial, monomials strictly descending in the ring order, no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;

  /// Sorts, merges equal terms, drops zeros.
  static Polynomial from_terms(const Ring& ring, std::vector<std::pair<Term, Fp>> terms);
  static Polynomial monomial(const Ring& ring, const Term& t, Fp c);
  /// Trusts the caller: monomials already strictly descending and nonzero.
  static Polynomial from_sorted(std::vector<Monomial> monomials) noexcept;

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  /// Leading monomial; undefined on the zero polynomial.
  const Monomial& leading() const noexcept { return terms_.front(); }
  const Term& lt() const noexcept { return terms_.front().term; }
  Fp lc() const noexcept { return terms_.front().coeff; }
  bool is_monic() const noexcept { return !terms_.empty() && terms_.front().coeff.v == 1; }
  /// Total degree; 0 for the zero polynomial.
  unsigned degree() const noexcept;

  Fp coefficient(const Ring& ring, const Term& t) const;
  bool contains(const Ring& ring, const Term& t) const { return coefficient(ring, t).v != 0; }

  friend bool operator==(const Polynomial&, const Polynomial&) noexcept = default;

 private:
  std::vector<Monomial> terms_;
};

/// f - c * t * g
Polynomial axpy(const Ring& ring, const Polynomial& f, Fp c, const Term& t, const Polynomial& g);
/// c * t * f
Polynomial mul_term(const Ring& ring, const Polynomial& f, Fp c, const Term& t);
Polynomial add(const Ring& ring, const Polynomial& f, const Polynomial& g);
Polynomial sub(const Ring& ring, const Polynomial& f, const Polynomial& g);
Polynomial mul(const Ring& ring, const Polynomial& f, const Polynomial& g);
/// Divides by the leading coefficient. Zero stays zero.
Polynomial make_monic(const Ring& ring, const Polynomial& f);

/// Throws DimensionMismatch when point.size() != nvars.
Fp eval(const Ring& ring, const Polynomial& f, std::span<const Fp> point);

/// Text form `c*x1^a1*...*xn^an` joined by ` + `; `0` for the zero polynomial.
std::string format_term(const Term& t);
std::string format_polynomial(const Polynomial& f);
/// Accepts the text form plus `-`, omitted coefficients and omitted `*`. Throws ParseError.
Polynomial parse_polynomial(const Ring& ring, const std::string& text);

}  // namespace borderforge
