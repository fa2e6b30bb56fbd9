#pragma once

// Number-theoretic transform over 31-bit primes p = c * 2^23 + 1.
// Internal to the coefficient builder.

#include <cstdint>
#include <vector>

namespace cuspl::detail {

class MontgomeryField {
 public:
  explicit MontgomeryField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  std::uint32_t to_mont(std::uint32_t a) const { return mul(a, r2_); }
  std::uint32_t from_mont(std::uint32_t a) const { return reduce(a); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t pow(std::uint32_t base_mont, std::uint64_t e) const;

 private:
  std::uint32_t reduce(std::uint64_t t) const {
    const std::uint32_t m = static_cast<std::uint32_t>(t) * pinv_;
    const std::uint64_t u = (t + static_cast<std::uint64_t>(m) * p_) >> 32;
    return u >= p_ ? static_cast<std::uint32_t>(u - p_) : static_cast<std::uint32_t>(u);
  }

  std::uint32_t p_;
  std::uint32_t pinv_;  // -p^{-1} mod 2^32
  std::uint32_t r2_;    // 2^64 mod p
};

constexpr int kNttMaxLog = 23;

/// Primes p < 2^31 with 2^23 | p - 1, largest first.
const std::vector<std::uint32_t>& ntt_primes();

/// Multiplicative generator of (Z/pZ)^*.
std::uint32_t primitive_root(std::uint32_t p);

/// Truncated product (a * b) mod (p, x^len); inputs/outputs are plain residues.
std::vector<std::uint32_t> multiply_truncated(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b,
                                              std::size_t len, std::uint32_t p);

}  // namespace cuspl::detail
