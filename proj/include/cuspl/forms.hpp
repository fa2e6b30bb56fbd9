#pragma once

// Level-1 Hecke eigenforms whose cusp-form space is one-dimensional
// (weights 12, 16, 18, 20, 22, 26): exact Fourier coefficients and the
// normalized coefficients lambda(n) = a(n) / n^((k-1)/2).

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cuspl {

constexpr std::size_t kDefaultNMax = std::size_t{1} << 20;
constexpr std::size_t kMaxCapacity = std::size_t{1} << 22;

/// Weights with dim S_k(SL2(Z)) = 1.
const std::vector<int>& supported_weights();
bool is_supported_weight(int weight);

class CuspForm {
 public:
  /// Wrap a coefficient table. coeffs[0] is ignored, coeffs[n] = a(n).
  /// Used for cache loading and for fault-injection tests; no Hecke check is done.
  static CuspForm from_coefficients(int weight, std::vector<mpz_class> coeffs);

  int weight() const { return weight_; }
  double kappa() const { return 0.5 * (weight_ - 1); }
  std::size_t n_max() const { return coeffs_.size() - 1; }

  /// a(n), 1 <= n <= n_max.
  const mpz_class& coefficient(std::size_t n) const;
  /// lambda(n), 1 <= n <= n_max.
  double lambda(std::size_t n) const;
  /// Dense table indexed by n; entry 0 is 0.
  std::span<const double> lambdas() const { return lambda_; }
  std::span<const mpz_class> coefficients() const { return coeffs_; }

  /// sum_{n <= n_max} lambda(n)^2 / n_max, the Rankin slope at full capacity.
  double rankin_slope() const { return rankin_slope_; }

 private:
  CuspForm(int weight, std::vector<mpz_class> coeffs);

  int weight_;
  std::vector<mpz_class> coeffs_;
  std::vector<double> lambda_;
  double rankin_slope_ = 0.0;
};

/// Multi-modular NTT construction (parallel over primes when OpenMP is on).
CuspForm build_eigenform(int weight, std::size_t n_max = kDefaultNMax);

/// Direct big-integer power-series multiplication, O(n_max^2). Reference path.
CuspForm build_eigenform_reference(int weight, std::size_t n_max);

/// Roots (alpha, beta) of X^2 - lambda(p) X + 1.
std::pair<std::complex<double>, std::complex<double>> satake_params(const CuspForm& form,
                                                                    std::size_t p);

struct HeckeReport {
  bool pass = true;
  std::optional<std::size_t> first_failure;
  std::string detail;
  std::size_t checks = 0;
};

/// Exact check of a(1) = 1, multiplicativity on coprime factors and the
/// prime-power recursion for every n <= n_limit.
HeckeReport verify_hecke(const CuspForm& form, std::size_t n_limit);

/// Exact check of a(n)^2 <= d(n)^2 n^(k-1) (equivalently |lambda(n)| <= d(n)).
HeckeReport verify_deligne(const CuspForm& form, std::size_t n_limit);

/// Number of divisors of n.
std::size_t divisor_count(std::size_t n);

bool is_prime(std::size_t n);

}  // namespace cuspl
