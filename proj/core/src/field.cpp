#include "borderforge/field.hpp"

#include <string>

#include "borderforge/errors.hpp"

namespace borderforge {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

// Extended Euclid over signed 64-bit; a is nonzero mod p.
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

constexpr std::uint32_t kInverseTableLimit = 1u << 16;

}  // namespace

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p > kMaxModulus || !is_prime(p)) {
    throw NotPrime("field modulus " + std::to_string(p) + " is not prime (or exceeds 2^31-1)");
  }
  if (p <= kInverseTableLimit) {
    inverse_table_.resize(p);
    for (std::uint32_t a = 1; a < p; ++a) inverse_table_[a] = inverse_mod(a, p);
  }
}

Fp PrimeField::inv(Fp a) const {
  if (a.v == 0) throw ZeroInverse("inverse of zero in F_" + std::to_string(p_));
  if (!inverse_table_.empty()) return Fp{inverse_table_[a.v]};
  return Fp{inverse_mod(a.v, p_)};
}

Fp PrimeField::pow(Fp a, std::uint64_t e) const noexcept {
  Fp result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

}  // namespace borderforge
