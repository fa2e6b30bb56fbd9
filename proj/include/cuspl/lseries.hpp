#pragma once

// L_f^(m)(s) by four methods: Dirichlet series, the completed-L oracle
// (incomplete gamma series), the sharp approximate functional equation and
// the smoothed one with its gamma_j correction sums.

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cuspl/chifactor.hpp"
#include "cuspl/forms.hpp"
#include "cuspl/parallel.hpp"
#include "cuspl/smoothing.hpp"

namespace cuspl {

enum class Method { dirichlet, oracle, afe_sharp, afe_smoothed, automatic };

std::string to_string(Method m);
/// Accepts dirichlet, oracle, afe_sharp, afe_smoothed, auto.
Method method_from_string(const std::string& name);

struct EvalResult {
  cplx value;
  Method method = Method::automatic;
  double err_estimate = 0.0;
  std::size_t terms_used = 0;
};

constexpr int kMaxDerivative = 4;
constexpr double kOracleTCap = 300.0;
/// Largest cap accepted by the oracle entry points.
constexpr double kOracleHardCap = 1000.0;
constexpr double kDirichletSigmaMin = 1.25;

// ---- summation kernels ----------------------------------------------------

/// sum_{n = n_begin}^{n_end} lambda(n) (-log n)^m n^(-s).
cplx dirichlet_sum(const CuspForm& form, int m, cplx s, std::size_t n_begin, std::size_t n_end,
                   Execution exec = Execution::parallel);

/// sum_n lambda(n) (-log n)^m n^(-s) phi(n / x) over the support n < 2x.
cplx smoothed_dirichlet_sum(const CuspForm& form, int m, cplx s, double x,
                            const SmoothingFunction& phi, Execution exec = Execution::parallel);

/// Rigorous bound for sum_{n > N} d(n) (log n)^m n^(-sigma); requires sigma > 1.
double dirichlet_tail_bound(int m, double sigma, std::size_t N);

// ---- evaluators -------------------------------------------------------------

/// Absolutely convergent series, sigma >= 1.25. Uses the sharp partial sum when
/// the divisor-bound tail fits in tol within the coefficient table, otherwise a
/// smoothly weighted sum with error estimated by halving its length.
EvalResult dirichlet_eval(const CuspForm& form, int m, cplx s, double tol = 1e-10);

/// L(s) from the completed L-function; |t| <= t_cap.
EvalResult oracle_eval(const CuspForm& form, cplx s, double t_cap = kOracleTCap);

/// L^(m)(s) by the trapezoid rule on a Cauchy circle around s.
EvalResult oracle_derivative(const CuspForm& form, int m, cplx s, double radius = 0.25,
                             int nodes = 32, double tol = 1e-8, double t_cap = kOracleTCap);

/// L^(r)(s) for r = 0..m from one set of circle samples.
std::vector<EvalResult> oracle_derivatives(const CuspForm& form, int m, cplx s,
                                           double radius = 0.25, int nodes = 32,
                                           double tol = 1e-8, double t_cap = kOracleTCap);

/// Sharp AFE: both sums cut at n <= |t| / 2 pi. sigma in [0, 1], |t| >= 10.
EvalResult afe_sharp(const CuspForm& form, int m, cplx s);

/// Calibrated constant c in the sharp-AFE error estimate c |t|^(1/2 - sigma + 0.05).
double afe_sharp_constant(int weight, int m);
constexpr double kSharpEpsilon = 0.05;

/// Smallest correction depth accepted with corrections on: ceil((k+1)/2).
int min_correction_depth(int weight);

/// Passing l = kAdaptiveDepth truncates the correction series at its smallest
/// terms among depths 1..kAdaptiveMaxDepth - 2; the error estimate is then twice
/// the size of the first two omitted terms.
constexpr int kAdaptiveDepth = -1;
constexpr int kAdaptiveMaxDepth = 12;

/// Smoothed AFE with weights phi(n/y1) and phi_0(n/y2), (2 pi)^2 y1 y2 = t^2.
/// With corrections, adds the two gamma_j correction sums for j = 1..l.
EvalResult afe_smoothed(const CuspForm& form, int m, cplx s, const SmoothingFunction& phi,
                        double y1, double y2, int l, bool with_corrections = true);

/// Same with y1 = y2 = |t| / 2 pi.
EvalResult afe_smoothed(const CuspForm& form, int m, cplx s, const SmoothingFunction& phi, int l,
                        bool with_corrections = true);

/// |L^(m)(s) - sum_r C(m,r) (-1)^r chi^(m-r)(s) L^(r)(1-s)| from the oracle.
double functional_eq_residual(const CuspForm& form, int m, cplx s);

struct EvalRequest {
  const CuspForm* form = nullptr;
  int m = 0;
  cplx s;
  Method method = Method::automatic;
  std::optional<SmoothingFunction> smoothing;
  int l = 0;  // 0 selects the adaptive depth
  std::optional<double> y1;
  std::optional<double> y2;
  bool with_corrections = true;
  double tol = 1e-10;
};

/// Method the dispatcher would pick for (sigma, t).
Method select_method(cplx s);

EvalResult eval(const EvalRequest& req);

}  // namespace cuspl
