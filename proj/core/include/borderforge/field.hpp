#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

namespace borderforge {

/// Residue in [0, p). The modulus lives in the owning PrimeField.
struct Fp {
  std::uint32_t v = 0;

  friend constexpr bool operator==(Fp a, Fp b) noexcept = default;
};

inline std::ostream& operator<<(std::ostream& os, Fp x) { return os << x.v; }

bool is_prime(std::uint64_t n) noexcept;

/// Arithmetic in F_p for a prime p < 2^31.
class PrimeField {
 public:
  static constexpr std::uint32_t kMaxModulus = (1u << 31) - 1;

  /// Throws NotPrime when p is not a prime below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  Fp zero() const noexcept { return Fp{0}; }
  Fp one() const noexcept { return Fp{1}; }

  Fp from_int(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return Fp{static_cast<std::uint32_t>(r)};
  }

  Fp add(Fp a, Fp b) const noexcept {
    std::uint32_t r = a.v + b.v;
    return Fp{r >= p_ ? r - p_ : r};
  }
  Fp sub(Fp a, Fp b) const noexcept { return Fp{a.v >= b.v ? a.v - b.v : a.v + (p_ - b.v)}; }
  Fp neg(Fp a) const noexcept { return Fp{a.v == 0 ? 0 : p_ - a.v}; }
  Fp mul(Fp a, Fp b) const noexcept {
    return Fp{static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % p_)};
  }
  /// a - b * c
  Fp sub_mul(Fp a, Fp b, Fp c) const noexcept { return sub(a, mul(b, c)); }

  /// Throws ZeroInverse for a = 0.
  Fp inv(Fp a) const;
  Fp pow(Fp a, std::uint64_t e) const noexcept;

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> inverse_table_;  // filled for small p
};

}  // namespace borderforge
