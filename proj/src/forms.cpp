#include "cuspl/forms.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cuspl/error.hpp"
#include "ntt.hpp"

namespace cuspl {

namespace {

using detail::MontgomeryField;

void check_weight(int weight) {
  if (!is_supported_weight(weight)) {
    std::ostringstream os;
    os << "no one-dimensional cusp-form space at weight " << weight
       << " (supported weights: 12, 16, 18, 20, 22, 26)";
    throw DomainError(os.str());
  }
}

void check_capacity(std::size_t n_max) {
  if (n_max < 2) throw DomainError("build_eigenform: n_max must be at least 2");
  if (n_max > kMaxCapacity) {
    std::ostringstream os;
    os << "build_eigenform: n_max = " << n_max << " exceeds capacity " << kMaxCapacity;
    throw DomainError(os.str());
  }
}

// Exponents (e4, e6) of the Eisenstein factor multiplying Delta.
std::pair<int, int> eisenstein_exponents(int weight) {
  switch (weight) {
    case 12: return {0, 0};
    case 16: return {1, 0};
    case 18: return {0, 1};
    case 20: return {2, 0};
    case 22: return {1, 1};
    case 26: return {2, 1};
    default: check_weight(weight);
  }
  return {0, 0};
}

std::uint32_t powmod(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t reduce_signed(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

// 1 + c * sum_{n >= 1} sigma_e(n) q^n mod p, len terms.
std::vector<std::uint32_t> eisenstein_mod(long long c, int e, std::size_t len, std::uint32_t p) {
  std::vector<std::uint32_t> sigma(len, 0);
  for (std::size_t d = 1; d < len; ++d) {
    const std::uint32_t de = powmod(d, e, p);
    for (std::size_t m = d; m < len; m += d) {
      sigma[m] += de;
      if (sigma[m] >= p) sigma[m] -= p;
    }
  }
  const std::uint64_t cm = reduce_signed(c, p);
  std::vector<std::uint32_t> out(len);
  out[0] = 1;
  for (std::size_t n = 1; n < len; ++n) out[n] = static_cast<std::uint32_t>(cm * sigma[n] % p);
  return out;
}

// Coefficients of q^(-1) f mod p, i.e. a(1..len) at indices 0..len-1.
std::vector<std::uint32_t> eigenform_mod(int weight, std::size_t len, std::uint32_t p) {
  // prod (1 - q^n)^3 = sum_k (-1)^k (2k+1) q^(k(k+1)/2)
  std::vector<std::uint32_t> h(len, 0);
  for (std::size_t k = 0; k * (k + 1) / 2 < len; ++k) {
    const long long v = (k % 2 == 0 ? 1LL : -1LL) * static_cast<long long>(2 * k + 1);
    h[k * (k + 1) / 2] = reduce_signed(v, p);
  }
  std::vector<std::uint32_t> f = detail::multiply_truncated(h, h, len, p);
  f = detail::multiply_truncated(f, f, len, p);
  f = detail::multiply_truncated(f, f, len, p);
  const auto [e4, e6] = eisenstein_exponents(weight);
  if (e4 > 0) {
    const auto E4 = eisenstein_mod(240, 3, len, p);
    for (int i = 0; i < e4; ++i) f = detail::multiply_truncated(f, E4, len, p);
  }
  if (e6 > 0) {
    const auto E6 = eisenstein_mod(-504, 5, len, p);
    for (int i = 0; i < e6; ++i) f = detail::multiply_truncated(f, E6, len, p);
  }
  return f;
}

// Bits needed to hold 2 * max |a(n)| with |a(n)| <= d(n) n^((k-1)/2) <= 2 n^(k/2).
std::size_t coefficient_bits(int weight, std::size_t n_max) {
  return static_cast<std::size_t>(std::ceil(0.5 * weight * std::log2(static_cast<double>(n_max)))) + 3;
}

std::vector<double> compute_lambdas(int weight, const std::vector<mpz_class>& coeffs) {
  const std::size_t n_max = coeffs.size() - 1;
  std::vector<double> out(coeffs.size(), 0.0);
  const long n_max_l = static_cast<long>(n_max);
#pragma omp parallel
  {
    mpfr_t num, den;
    mpfr_init2(num, 128);
    mpfr_init2(den, 128);
#pragma omp for schedule(static)
    for (long n = 1; n <= n_max_l; ++n) {
      mpfr_set_z(num, coeffs[n].get_mpz_t(), MPFR_RNDN);
      mpfr_ui_pow_ui(den, static_cast<unsigned long>(n), static_cast<unsigned long>(weight - 1),
                     MPFR_RNDN);
      mpfr_sqrt(den, den, MPFR_RNDN);
      mpfr_div(num, num, den, MPFR_RNDN);
      out[n] = mpfr_get_d(num, MPFR_RNDN);
    }
    mpfr_clear(num);
    mpfr_clear(den);
  }
  return out;
}

std::vector<std::size_t> smallest_prime_factors(std::size_t n) {
  std::vector<std::size_t> spf(n + 1, 0);
  for (std::size_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::size_t j = i; j <= n; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

}  // namespace

const std::vector<int>& supported_weights() {
  static const std::vector<int> w = {12, 16, 18, 20, 22, 26};
  return w;
}

bool is_supported_weight(int weight) {
  const auto& w = supported_weights();
  return std::find(w.begin(), w.end(), weight) != w.end();
}

CuspForm::CuspForm(int weight, std::vector<mpz_class> coeffs)
    : weight_(weight), coeffs_(std::move(coeffs)) {
  lambda_ = compute_lambdas(weight_, coeffs_);
  double acc = 0.0;
  for (std::size_t n = 1; n < lambda_.size(); ++n) acc += lambda_[n] * lambda_[n];
  rankin_slope_ = acc / static_cast<double>(n_max());
}

CuspForm CuspForm::from_coefficients(int weight, std::vector<mpz_class> coeffs) {
  check_weight(weight);
  if (coeffs.size() < 3) throw DomainError("from_coefficients: need a(1) and a(2) at least");
  if (coeffs.size() - 1 > kMaxCapacity) throw DomainError("from_coefficients: table exceeds capacity");
  coeffs[0] = 0;
  return CuspForm(weight, std::move(coeffs));
}

const mpz_class& CuspForm::coefficient(std::size_t n) const {
  if (n < 1 || n > n_max()) {
    std::ostringstream os;
    os << "coefficient index " << n << " outside [1, " << n_max() << "]";
    throw DomainError(os.str());
  }
  return coeffs_[n];
}

double CuspForm::lambda(std::size_t n) const {
  if (n < 1 || n > n_max()) {
    std::ostringstream os;
    os << "lambda index " << n << " outside [1, " << n_max() << "]";
    throw DomainError(os.str());
  }
  return lambda_[n];
}

CuspForm build_eigenform(int weight, std::size_t n_max) {
  check_weight(weight);
  check_capacity(n_max);
  const auto& all_primes = detail::ntt_primes();
  const std::size_t bits = coefficient_bits(weight, n_max);
  std::size_t k = 0;
  double have = 0.0;
  while (have < static_cast<double>(bits)) have += std::log2(static_cast<double>(all_primes[k++]));
  const std::size_t n_primes = k + 1;  // last one is the check prime
  if (n_primes > all_primes.size()) throw DomainError("build_eigenform: not enough NTT primes");
  std::vector<std::uint32_t> primes(all_primes.begin(), all_primes.begin() + n_primes);

  std::vector<std::vector<std::uint32_t>> residues(n_primes);
  const long np = static_cast<long>(n_primes);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < np; ++i) residues[i] = eigenform_mod(weight, n_max, primes[i]);

  // Garner mixed-radix coefficients: inv[j][i] = p_j^{-1} mod p_i.
  const std::size_t K = n_primes - 1;
  std::vector<std::vector<std::uint32_t>> inv(K, std::vector<std::uint32_t>(K, 0));
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j < i; ++j) inv[j][i] = powmod(primes[j], primes[i] - 2, primes[i]);
  }
  mpz_class modulus = 1;
  for (std::size_t i = 0; i < K; ++i) modulus *= primes[i];
  const mpz_class half = modulus / 2;
  const std::uint32_t pc = primes[K];

  std::vector<mpz_class> coeffs(n_max + 1);
  long bad = -1;
  const long n_max_l = static_cast<long>(n_max);
#pragma omp parallel
  {
    std::vector<std::uint64_t> v(K);
#pragma omp for schedule(static)
    for (long n = 1; n <= n_max_l; ++n) {
      const std::size_t idx = static_cast<std::size_t>(n - 1);
      for (std::size_t i = 0; i < K; ++i) {
        std::uint64_t x = residues[i][idx];
        for (std::size_t j = 0; j < i; ++j) {
          x = (x + primes[i] - v[j] % primes[i]) % primes[i] * inv[j][i] % primes[i];
        }
        v[i] = x;
      }
      mpz_class x = static_cast<unsigned long>(v[K - 1]);
      for (std::size_t i = K - 1; i-- > 0;) {
        x *= static_cast<unsigned long>(primes[i]);
        x += static_cast<unsigned long>(v[i]);
      }
      if (x > half) x -= modulus;
      if (mpz_fdiv_ui(x.get_mpz_t(), pc) != residues[K][idx]) {
#pragma omp critical
        if (bad < 0 || n < bad) bad = n;
      }
      coeffs[n] = std::move(x);
    }
  }
  if (bad >= 0) {
    std::ostringstream os;
    os << "build_eigenform: CRT check prime disagrees at n = " << bad;
    throw ConvergenceError(os.str());
  }
  return CuspForm::from_coefficients(weight, std::move(coeffs));
}

CuspForm build_eigenform_reference(int weight, std::size_t n_max) {
  check_weight(weight);
  check_capacity(n_max);
  const std::size_t len = n_max;  // series in q, indices 0..len-1 of q^(-1) f
  std::vector<mpz_class> f(len, 0);
  f[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = len - 1; i >= n; --i) f[i] -= f[i - n];
    }
  }
  auto multiply = [len](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> c(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; i + j < len; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  auto eisenstein = [len](long c, unsigned e) {
    std::vector<mpz_class> out(len, 0);
    out[0] = 1;
    for (std::size_t n = 1; n < len; ++n) {
      mpz_class s = 0, t;
      for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        mpz_ui_pow_ui(t.get_mpz_t(), d, e);
        s += t;
      }
      out[n] = c * s;
    }
    return out;
  };
  const auto [e4, e6] = eisenstein_exponents(weight);
  if (e4 > 0) {
    const auto E4 = eisenstein(240, 3);
    for (int i = 0; i < e4; ++i) f = multiply(f, E4);
  }
  if (e6 > 0) {
    const auto E6 = eisenstein(-504, 5);
    for (int i = 0; i < e6; ++i) f = multiply(f, E6);
  }
  std::vector<mpz_class> coeffs(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) coeffs[n] = f[n - 1];
  return CuspForm::from_coefficients(weight, std::move(coeffs));
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::size_t divisor_count(std::size_t n) {
  if (n == 0) throw DomainError("divisor_count: n must be positive");
  std::size_t count = 1;
  for (std::size_t p = 2; p * p <= n; ++p) {
    std::size_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= e + 1;
  }
  if (n > 1) count *= 2;
  return count;
}

std::pair<std::complex<double>, std::complex<double>> satake_params(const CuspForm& form,
                                                                    std::size_t p) {
  if (!is_prime(p)) {
    std::ostringstream os;
    os << "satake_params: " << p << " is not prime";
    throw DomainError(os.str());
  }
  const double lam = form.lambda(p);
  const double disc = lam * lam - 4.0;
  if (disc <= 0.0) {
    const double im = 0.5 * std::sqrt(-disc);
    return {{0.5 * lam, im}, {0.5 * lam, -im}};
  }
  const double root = std::sqrt(disc);
  // larger-magnitude root first, the other from alpha * beta = 1
  const double alpha = 0.5 * (lam + std::copysign(root, lam));
  return {{alpha, 0.0}, {1.0 / alpha, 0.0}};
}

HeckeReport verify_hecke(const CuspForm& form, std::size_t n_limit) {
  if (n_limit > form.n_max()) throw DomainError("verify_hecke: n_limit exceeds n_max");
  HeckeReport rep;
  auto fail = [&rep](std::size_t n, const std::string& what) {
    rep.pass = false;
    rep.first_failure = n;
    rep.detail = what;
  };
  if (n_limit >= 1) {
    ++rep.checks;
    if (form.coefficient(1) != 1) {
      fail(1, "a(1) != 1");
      return rep;
    }
  }
  const auto spf = smallest_prime_factors(n_limit);
  const unsigned long km1 = static_cast<unsigned long>(form.weight() - 1);
  mpz_class pk, rhs;
  for (std::size_t n = 2; n <= n_limit; ++n) {
    const std::size_t p = spf[n];
    std::size_t q = 1;
    int e = 0;
    std::size_t m = n;
    while (m % p == 0) {
      m /= p;
      q *= p;
      ++e;
    }
    std::ostringstream os;
    if (m > 1) {
      ++rep.checks;
      rhs = form.coefficient(q) * form.coefficient(m);
      if (form.coefficient(n) != rhs) {
        os << "multiplicativity a(" << n << ") = " << form.coefficient(n).get_str() << " but a("
           << q << ") a(" << m << ") = " << rhs.get_str();
        fail(n, os.str());
        return rep;
      }
    } else if (e >= 2) {
      ++rep.checks;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, km1);
      const std::size_t prev = q / p;
      const mpz_class prev2 = (e == 2) ? mpz_class(1) : form.coefficient(prev / p);
      rhs = form.coefficient(p) * form.coefficient(prev) - pk * prev2;
      if (form.coefficient(n) != rhs) {
        os << "prime-power recursion at p = " << p << ": a(" << n
           << ") = " << form.coefficient(n).get_str() << " but recursion gives " << rhs.get_str();
        fail(n, os.str());
        return rep;
      }
    }
  }
  return rep;
}

HeckeReport verify_deligne(const CuspForm& form, std::size_t n_limit) {
  if (n_limit > form.n_max()) throw DomainError("verify_deligne: n_limit exceeds n_max");
  HeckeReport rep;
  const unsigned long km1 = static_cast<unsigned long>(form.weight() - 1);
  mpz_class lhs, rhs;
  for (std::size_t n = 1; n <= n_limit; ++n) {
    ++rep.checks;
    const mpz_class& a = form.coefficient(n);
    lhs = a * a;
    mpz_ui_pow_ui(rhs.get_mpz_t(), n, km1);
    const std::size_t d = divisor_count(n);
    rhs *= static_cast<unsigned long>(d * d);
    if (lhs > rhs) {
      rep.pass = false;
      rep.first_failure = n;
      rep.detail = "a(n)^2 > d(n)^2 n^(k-1) at n = " + std::to_string(n);
      return rep;
    }
  }
  return rep;
}

}  // namespace cuspl
