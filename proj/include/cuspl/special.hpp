#pragma once

// Complex gamma-family functions in binary64.
//
// log_gamma / digamma / polygamma shift the argument upward with the
// recurrence until the Stirling series (Bernoulli terms through B_20) is
// accurate, then sum the series. The incomplete gamma uses the Legendre
// continued fraction or the power series of the lower function, whichever
// converges faster for the given (a, z).

#include <complex>

namespace cuspl::special {

using cplx = std::complex<double>;

struct PrecisionPolicy {
  double target_rel_err = 1e-13;
  int max_recurrence_shift = 4096;
  double asymptotic_threshold = 12.0;

  void validate() const;
};

const PrecisionPolicy& default_policy();

/// Principal branch of log Gamma, analytic on C minus (-inf, 0].
cplx log_gamma(cplx z, const PrecisionPolicy& pol = default_policy());

cplx digamma(cplx z, const PrecisionPolicy& pol = default_policy());

/// j-th derivative of digamma, 1 <= j <= 8.
cplx polygamma(int j, cplx z, const PrecisionPolicy& pol = default_policy());

/// Gamma(a, x) for real x >= 1.
cplx upper_incomplete_gamma(cplx a, double x);

/// Gamma(a, z) for Re z > 0.
cplx upper_incomplete_gamma(cplx a, cplx z);

/// Regularized Q(a, z) = Gamma(a, z) / Gamma(a) for Re z > 0. Evaluated
/// without forming Gamma(a, z) and Gamma(a) separately, so it stays finite
/// when both are far below the double range.
cplx regularized_upper_gamma(cplx a, cplx z);

/// Same as above with log Gamma(a) supplied by the caller (hot loops reuse it).
cplx regularized_upper_gamma(cplx a, cplx z, cplx log_gamma_a);

}  // namespace cuspl::special
