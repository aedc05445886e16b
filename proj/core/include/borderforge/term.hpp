#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace borderforge {

inline constexpr std::size_t kMaxVars = 7;
inline constexpr unsigned kMaxExponent = 255;

/// Power product x_1^a_1 ... x_n^a_n, n <= kMaxVars, every a_i <= 255.
///
/// Stored packed in one 64-bit word: byte i holds a_{i+1}, the top byte holds n.
/// Terms over different n never compare equal.
class Term {
 public:
  Term() = default;
  /// Throws DimensionMismatch for n > kMaxVars, ExponentOverflow for a_i > 255.
  explicit Term(std::span<const unsigned> exponents);
  Term(std::initializer_list<unsigned> exponents);

  static Term one(std::size_t nvars);
  /// x_{index+1}; index is zero-based.
  static Term variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const noexcept { return static_cast<std::size_t>(bits_ >> 56); }
  unsigned exponent(std::size_t i) const noexcept {
    return static_cast<unsigned>((bits_ >> (8 * i)) & 0xFF);
  }
  unsigned degree() const noexcept;
  std::vector<unsigned> exponents() const;
  bool is_one() const noexcept { return (bits_ & kExponentMask) == 0; }

  /// Product of terms; throws DimensionMismatch / ExponentOverflow.
  Term times(const Term& other) const;
  Term times_variable(std::size_t index) const;
  /// this / x_{index+1}; caller guarantees exponent(index) > 0.
  Term divided_by_variable(std::size_t index) const noexcept {
    return Term(bits_ - (std::uint64_t{1} << (8 * index)));
  }
  /// this / other; caller guarantees other divides this.
  Term quotient(const Term& other) const noexcept {
    return Term(bits_ - (other.bits_ & kExponentMask));
  }

  /// True iff this divides s componentwise. Throws DimensionMismatch.
  bool divides(const Term& s) const;

  std::uint64_t raw() const noexcept { return bits_; }

  friend bool operator==(const Term&, const Term&) noexcept = default;

 private:
  static constexpr std::uint64_t kExponentMask = (std::uint64_t{1} << 56) - 1;
  explicit Term(std::uint64_t bits) noexcept : bits_(bits) {}

  std::uint64_t bits_ = 0;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept {
    std::uint64_t x = t.raw();
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

/// Total degree-compatible term orders supported by a Ring.
enum class TermOrder { DegRevLex, DegLex };

TermOrder parse_term_order(const std::string& name);
std::string to_string(TermOrder order);

/// Order key: comparing keys as unsigned integers reproduces the term order.
/// Valid for n <= kMaxVars and degree < 2^16.
std::uint64_t order_key(TermOrder order, const Term& t) noexcept;

/// Throws DimensionMismatch when the terms have different arity.
std::strong_ordering compare(TermOrder order, const Term& a, const Term& b);

/// Enumerates every term of exactly the given total degree.
std::vector<Term> terms_of_degree(std::size_t nvars, unsigned degree);
/// Enumerates every term of total degree <= bound.
std::vector<Term> terms_up_to_degree(std::size_t nvars, unsigned bound);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

}  // namespace borderforge
