#include "ntt.hpp"

#include <algorithm>
#include <stdexcept>

namespace cuspl::detail {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic for n < 2^32 with bases 2, 7, 61.
bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
    if (n % q == 0) return n == q;
  }
  std::uint32_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint32_t a : {2u, 7u, 61u}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

void transform(std::vector<std::uint32_t>& a, const MontgomeryField& f, std::uint32_t root_mont,
               bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const std::uint32_t p = f.modulus();
  std::vector<std::uint32_t> w;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    // root of order len
    std::uint32_t wl = f.pow(root_mont, (static_cast<std::uint64_t>(p) - 1) / len);
    if (inverse) wl = f.pow(wl, len - 1);
    const std::size_t half = len >> 1;
    w.resize(half);
    w[0] = f.to_mont(1);
    for (std::size_t k = 1; k < half; ++k) w[k] = f.mul(w[k - 1], wl);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t u = a[i + k];
        const std::uint32_t v = f.mul(a[i + k + half], w[k]);
        a[i + k] = f.add(u, v);
        a[i + k + half] = f.sub(u, v);
      }
    }
  }
}

}  // namespace

MontgomeryField::MontgomeryField(std::uint32_t p) : p_(p) {
  if (p % 2 == 0 || p >= (1u << 31)) throw std::invalid_argument("MontgomeryField: bad modulus");
  std::uint32_t inv = 1;
  for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;  // Newton: inv = p^{-1} mod 2^32
  pinv_ = ~inv + 1;
  const std::uint64_t r = (static_cast<std::uint64_t>(1) << 32) % p;
  r2_ = static_cast<std::uint32_t>(r * r % p);
}

std::uint32_t MontgomeryField::pow(std::uint32_t base_mont, std::uint64_t e) const {
  std::uint32_t r = to_mont(1);
  while (e) {
    if (e & 1) r = mul(r, base_mont);
    base_mont = mul(base_mont, base_mont);
    e >>= 1;
  }
  return r;
}

const std::vector<std::uint32_t>& ntt_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<std::uint32_t> out;
    const std::uint32_t step = 1u << kNttMaxLog;
    for (std::uint32_t c = ((1u << 31) - 2) / step; c >= 1; --c) {
      const std::uint32_t p = c * step + 1;
      if (is_prime_u32(p)) out.push_back(p);
    }
    return out;
  }();
  return primes;
}

std::uint32_t primitive_root(std::uint32_t p) {
  std::vector<std::uint32_t> factors;
  std::uint32_t m = p - 1;
  for (std::uint32_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::uint32_t q : factors) {
      if (powmod64(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

std::vector<std::uint32_t> multiply_truncated(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b,
                                              std::size_t len, std::uint32_t p) {
  const std::size_t na = std::min(a.size(), len);
  const std::size_t nb = std::min(b.size(), len);
  if (na == 0 || nb == 0) return std::vector<std::uint32_t>(len, 0);
  std::size_t n = 1;
  while (n < na + nb - 1) n <<= 1;
  if (n > (static_cast<std::size_t>(1) << kNttMaxLog)) {
    throw std::length_error("multiply_truncated: transform length exceeds 2^23");
  }
  const MontgomeryField f(p);
  const std::uint32_t g = f.to_mont(primitive_root(p));
  std::vector<std::uint32_t> fa(n, 0), fb(n, 0);
  for (std::size_t i = 0; i < na; ++i) fa[i] = f.to_mont(a[i]);
  for (std::size_t i = 0; i < nb; ++i) fb[i] = f.to_mont(b[i]);
  const bool square = (&a == &b);
  transform(fa, f, g, false);
  if (!square) transform(fb, f, g, false);
  const std::vector<std::uint32_t>& rhs = square ? fa : fb;
  for (std::size_t i = 0; i < n; ++i) fa[i] = f.mul(fa[i], rhs[i]);
  transform(fa, f, g, true);
  // 1/n in Montgomery form
  const std::uint32_t n_inv = f.pow(f.to_mont(static_cast<std::uint32_t>(n % p)), p - 2);
  std::vector<std::uint32_t> out(len, 0);
  for (std::size_t i = 0; i < std::min(len, n); ++i) out[i] = f.from_mont(f.mul(fa[i], n_inv));
  return out;
}

}  // namespace cuspl::detail
