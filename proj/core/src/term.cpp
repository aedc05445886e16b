#include "borderforge/term.hpp"

#include <string>

#include "borderforge/errors.hpp"

namespace borderforge {

namespace {

void check_arity(std::size_t n) {
  if (n > kMaxVars) {
    throw DimensionMismatch("at most " + std::to_string(kMaxVars) + " variables are supported, got " +
                            std::to_string(n));
  }
}

void check_same_arity(const Term& a, const Term& b) {
  if (a.nvars() != b.nvars()) {
    throw DimensionMismatch("terms over " + std::to_string(a.nvars()) + " and " + std::to_string(b.nvars()) +
                            " variables");
  }
}

// Appends all exponent vectors of total degree `remaining` over variables [i, n).
void enumerate_degree(std::size_t nvars, std::size_t i, unsigned remaining, std::vector<unsigned>& buf,
                      std::vector<Term>& out) {
  if (i + 1 == nvars) {
    buf[i] = remaining;
    out.emplace_back(std::span<const unsigned>(buf));
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    buf[i] = e;
    enumerate_degree(nvars, i + 1, remaining - e, buf, out);
  }
}

}  // namespace

Term::Term(std::span<const unsigned> exponents) {
  check_arity(exponents.size());
  std::uint64_t bits = static_cast<std::uint64_t>(exponents.size()) << 56;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] > kMaxExponent) {
      throw ExponentOverflow("exponent " + std::to_string(exponents[i]) + " exceeds " +
                             std::to_string(kMaxExponent));
    }
    bits |= static_cast<std::uint64_t>(exponents[i]) << (8 * i);
  }
  bits_ = bits;
}

Term::Term(std::initializer_list<unsigned> exponents)
    : Term(std::span<const unsigned>(exponents.begin(), exponents.size())) {}

Term Term::one(std::size_t nvars) {
  check_arity(nvars);
  return Term(static_cast<std::uint64_t>(nvars) << 56);
}

Term Term::variable(std::size_t nvars, std::size_t index) {
  check_arity(nvars);
  if (index >= nvars) throw DimensionMismatch("variable index out of range");
  return Term((static_cast<std::uint64_t>(nvars) << 56) | (std::uint64_t{1} << (8 * index)));
}

unsigned Term::degree() const noexcept {
  unsigned d = 0;
  std::uint64_t b = bits_ & kExponentMask;
  while (b != 0) {
    d += static_cast<unsigned>(b & 0xFF);
    b >>= 8;
  }
  return d;
}

std::vector<unsigned> Term::exponents() const {
  std::vector<unsigned> out(nvars());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = exponent(i);
  return out;
}

Term Term::times(const Term& other) const {
  check_same_arity(*this, other);
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (exponent(i) + other.exponent(i) > kMaxExponent) throw ExponentOverflow("term product overflows");
  }
  return Term(bits_ + (other.bits_ & kExponentMask));
}

Term Term::times_variable(std::size_t index) const {
  if (index >= nvars()) throw DimensionMismatch("variable index out of range");
  if (exponent(index) == kMaxExponent) throw ExponentOverflow("term product overflows");
  return Term(bits_ + (std::uint64_t{1} << (8 * index)));
}

bool Term::divides(const Term& s) const {
  check_same_arity(*this, s);
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (exponent(i) > s.exponent(i)) return false;
  }
  return true;
}

TermOrder parse_term_order(const std::string& name) {
  if (name == "degrevlex") return TermOrder::DegRevLex;
  if (name == "deglex") return TermOrder::DegLex;
  throw ConfigError("unknown term order '" + name + "' (expected degrevlex or deglex)");
}

std::string to_string(TermOrder order) {
  return order == TermOrder::DegRevLex ? "degrevlex" : "deglex";
}

std::uint64_t order_key(TermOrder order, const Term& t) noexcept {
  const std::size_t n = t.nvars();
  std::uint64_t key = static_cast<std::uint64_t>(t.degree()) << 48;
  if (n < 2) return key;
  int shift = 40;
  if (order == TermOrder::DegRevLex) {
    // Smaller exponent in the last variable wins; x_1 is implied by the degree.
    for (std::size_t i = n - 1; i >= 1; --i, shift -= 8) {
      key |= static_cast<std::uint64_t>(kMaxExponent - t.exponent(i)) << shift;
    }
  } else {
    for (std::size_t i = 0; i + 1 < n; ++i, shift -= 8) {
      key |= static_cast<std::uint64_t>(t.exponent(i)) << shift;
    }
  }
  return key;
}

std::strong_ordering compare(TermOrder order, const Term& a, const Term& b) {
  check_same_arity(a, b);
  return order_key(order, a) <=> order_key(order, b);
}

std::vector<Term> terms_of_degree(std::size_t nvars, unsigned degree) {
  check_arity(nvars);
  std::vector<Term> out;
  if (nvars == 0) {
    if (degree == 0) out.push_back(Term::one(0));
    return out;
  }
  std::vector<unsigned> buf(nvars, 0);
  enumerate_degree(nvars, 0, degree, buf, out);
  return out;
}

std::vector<Term> terms_up_to_degree(std::size_t nvars, unsigned bound) {
  std::vector<Term> out;
  for (unsigned d = 0; d <= bound; ++d) {
    auto level = terms_of_degree(nvars, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace borderforge
