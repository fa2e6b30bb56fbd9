#include "cuspl/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cuspl/error.hpp"

namespace cuspl::special {

namespace {

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,        -1.0 / 30.0,    1.0 / 42.0,         -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0, 7.0 / 6.0,         -3617.0 / 510.0,
    43867.0 / 798.0,  -174611.0 / 330.0};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

void check_pole(cplx z, const char* fn) {
  if (is_nonpositive_integer(z)) {
    std::ostringstream os;
    os << fn << ": pole at z = " << z.real();
    throw DomainError(os.str());
  }
}

// Number of unit shifts needed before the asymptotic series is used.
int shift_count(cplx z, double threshold, const PrecisionPolicy& pol, const char* fn) {
  const double x = z.real();
  const double y = std::abs(z.imag());
  if (x >= threshold || (y >= threshold && x >= -y)) return 0;
  const double need = std::ceil(threshold - x);
  if (need > pol.max_recurrence_shift) {
    std::ostringstream os;
    os << fn << ": argument " << z << " needs " << need
       << " recurrence shifts (cap " << pol.max_recurrence_shift << ")";
    throw DomainError(os.str());
  }
  return static_cast<int>(need);
}

cplx stirling_log_gamma(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx acc = 0.0;
  for (int k = 10; k >= 1; --k) {
    const double c = kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0));
    acc = acc * inv2 + c;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + acc * inv;
}

cplx stirling_digamma(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx acc = 0.0;
  for (int k = 10; k >= 1; --k) {
    acc = acc * inv2 + kBernoulli[k - 1] / (2.0 * k);
  }
  return std::log(z) - 0.5 * inv - acc * inv2;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// psi^(j)(z) ~ (-1)^(j+1) [ (j-1)!/z^j + j!/(2 z^(j+1)) + sum B_2k (2k+j-1)!/(2k)! / z^(2k+j) ]
cplx stirling_polygamma(int j, cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx acc = 0.0;
  for (int k = 10; k >= 1; --k) {
    const double c = kBernoulli[k - 1] * factorial(2 * k + j - 1) / factorial(2 * k);
    acc = acc * inv2 + c;
  }
  cplx invj = std::pow(inv, j);
  cplx s = invj * (factorial(j - 1) + 0.5 * factorial(j) * inv + acc * inv2);
  return (j % 2 == 1) ? s : -s;
}

double modulus_ratio(cplx a, cplx b) { return std::abs(a) / std::abs(b); }

}  // namespace

void PrecisionPolicy::validate() const {
  if (!(target_rel_err > 0.0 && target_rel_err <= 1e-6)) {
    throw DomainError("PrecisionPolicy: target_rel_err must lie in (0, 1e-6]");
  }
  if (max_recurrence_shift <= 0 || !(asymptotic_threshold > 0.0)) {
    throw DomainError("PrecisionPolicy: thresholds must be positive");
  }
}

const PrecisionPolicy& default_policy() {
  static const PrecisionPolicy pol{};
  return pol;
}

cplx log_gamma(cplx z, const PrecisionPolicy& pol) {
  check_pole(z, "log_gamma");
  if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z), pol));
  const int n = shift_count(z, pol.asymptotic_threshold, pol, "log_gamma");
  cplx shift = 0.0;
  for (int j = 0; j < n; ++j) shift += std::log(z + static_cast<double>(j));
  return stirling_log_gamma(z + static_cast<double>(n)) - shift;
}

cplx digamma(cplx z, const PrecisionPolicy& pol) {
  check_pole(z, "digamma");
  if (z.imag() < 0.0) return std::conj(digamma(std::conj(z), pol));
  const int n = shift_count(z, pol.asymptotic_threshold, pol, "digamma");
  cplx shift = 0.0;
  for (int j = 0; j < n; ++j) shift += 1.0 / (z + static_cast<double>(j));
  return stirling_digamma(z + static_cast<double>(n)) - shift;
}

cplx polygamma(int j, cplx z, const PrecisionPolicy& pol) {
  if (j < 1 || j > 8) throw DomainError("polygamma: order must be in 1..8");
  check_pole(z, "polygamma");
  if (z.imag() < 0.0) return std::conj(polygamma(j, std::conj(z), pol));
  const int n = shift_count(z, pol.asymptotic_threshold + j, pol, "polygamma");
  // psi^(j)(z) = psi^(j)(z+1) - (-1)^j j! / z^(j+1)
  cplx shift = 0.0;
  for (int i = 0; i < n; ++i) shift += std::pow(1.0 / (z + static_cast<double>(i)), j + 1);
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return stirling_polygamma(j, z + static_cast<double>(n)) - sign * factorial(j) * shift;
}

namespace {

constexpr int kMaxIter = 20000;
constexpr double kEps = 1e-16;

// Legendre continued fraction for Gamma(a,z) e^z z^-a (modified Lentz).
cplx legendre_cf(cplx a, cplx z, int& iters) {
  constexpr double tiny = 1e-300;
  cplx b = z + 1.0 - a;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      iters = i;
      return h;
    }
  }
  std::ostringstream os;
  os << "incomplete gamma continued fraction did not converge: a = " << a << ", z = " << z
     << ", iterations = " << kMaxIter;
  throw ConvergenceError(os.str());
}

// sum_{n>=0} z^n / (a (a+1) ... (a+n))
cplx lower_series(cplx a, cplx z, int& iters) {
  cplx term = 1.0 / a;
  cplx sum = term;
  for (int n = 1; n <= kMaxIter; ++n) {
    term *= z / (a + static_cast<double>(n));
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) {
      iters = n;
      return sum;
    }
  }
  std::ostringstream os;
  os << "incomplete gamma series did not converge: a = " << a << ", z = " << z;
  throw ConvergenceError(os.str());
}

// The series is used while |z| is comfortably below |a|; beyond that the
// continued fraction converges faster.
bool prefer_series(cplx a, cplx z) { return modulus_ratio(z, a) < 0.9 && std::abs(z) < 1e3; }

void check_rhp(cplx z) {
  if (!(z.real() > 0.0) || std::abs(z) < 1.0) {
    std::ostringstream os;
    os << "upper_incomplete_gamma: requires Re z > 0 and |z| >= 1, got z = " << z;
    throw DomainError(os.str());
  }
}

}  // namespace

cplx regularized_upper_gamma(cplx a, cplx z, cplx log_gamma_a) {
  check_rhp(z);
  int iters = 0;
  const cplx log_prefactor = -z + a * std::log(z) - log_gamma_a;
  if (prefer_series(a, z)) {
    return 1.0 - std::exp(log_prefactor) * lower_series(a, z, iters);
  }
  return std::exp(log_prefactor) * legendre_cf(a, z, iters);
}

cplx regularized_upper_gamma(cplx a, cplx z) {
  return regularized_upper_gamma(a, z, log_gamma(a));
}

cplx upper_incomplete_gamma(cplx a, cplx z) {
  check_rhp(z);
  int iters = 0;
  if (prefer_series(a, z) && !is_nonpositive_integer(a)) {
    const cplx lga = log_gamma(a);
    return std::exp(lga) - std::exp(-z + a * std::log(z)) * lower_series(a, z, iters);
  }
  return std::exp(-z + a * std::log(z)) * legendre_cf(a, z, iters);
}

cplx upper_incomplete_gamma(cplx a, double x) {
  if (!(x >= 1.0)) throw DomainError("upper_incomplete_gamma: requires x >= 1");
  return upper_incomplete_gamma(a, cplx(x, 0.0));
}

}  // namespace cuspl::special
