#pragma once

// Smooth cutoffs of class R: real C-infinity functions on [0, inf) equal to 1
// on [0, 1/2] and 0 on [2, inf), their reflections phi_0(rho) = 1 - phi(1/rho),
// and the compressed family psi_alpha(rho) = phi(1 + (rho - 1) |t|^alpha).
//
// The standard bump is phi(rho) = g(2 - rho) / (g(2 - rho) + g(rho - 1/2)),
// g(x) = exp(-1/x) for x > 0 and 0 otherwise. Derivatives are exact Taylor
// coefficients propagated through the formula (automatic differentiation).

#include <complex>
#include <memory>
#include <utility>
#include <vector>

namespace cuspl {

constexpr int kMaxSmoothingOrder = 24;

class SmoothingFunction {
 public:
  enum class Kind { standard_bump, psi_alpha };

  Kind kind() const { return kind_; }
  bool is_reflected() const { return reflected_; }
  double alpha() const { return alpha_; }
  double t_abs() const { return t_abs_; }
  int max_order() const { return max_order_; }

  /// Interval outside which the function is locally constant.
  std::pair<double, double> transition() const;

  double value(double rho) const { return derivative(0, rho); }
  double derivative(int j, double rho) const;
  /// phi^(0..jmax)(rho) in one pass.
  std::vector<double> derivatives(int jmax, double rho) const;

  /// phi_0(rho) = 1 - phi(1/rho).
  SmoothingFunction reflect() const;

 private:
  friend SmoothingFunction make_phi(int);
  friend SmoothingFunction make_psi_alpha(const SmoothingFunction&, double, double);
  friend double phi_norm(const SmoothingFunction&, int);

  struct NormCache;

  SmoothingFunction(Kind kind, double alpha, double t_abs, bool reflected, int max_order);

  Kind kind_;
  double alpha_ = 0.0;
  double t_abs_ = 0.0;
  double scale_ = 1.0;  // |t|^alpha for psi_alpha
  bool reflected_ = false;
  int max_order_;
  std::shared_ptr<NormCache> norms_;
};

/// Standard bump with derivatives up to max_order (at most 24).
SmoothingFunction make_phi(int max_order = 12);

/// phi^(j)(rho); j > max_order raises DomainError.
double phi_deriv(const SmoothingFunction& phi, int j, double rho);

/// L1 norm of phi^(j) over [0, inf). Cached per order.
double phi_norm(const SmoothingFunction& phi, int j);

/// K_phi(w) = w int_0^inf phi(rho) rho^(w-1) d rho, evaluated through
/// (-1)^(l+1) / ((w+1)...(w+l)) int phi^(l+1)(rho) rho^(w+l) d rho.
/// K_phi(0) = 1 by convention.
std::complex<double> k_phi(const SmoothingFunction& phi, std::complex<double> w, int l);

/// psi_alpha(rho) = phi(1 + (rho - 1) t_abs^alpha); alpha in [0, 1/2], t_abs >= 10.
SmoothingFunction make_psi_alpha(const SmoothingFunction& phi, double alpha, double t_abs);

}  // namespace cuspl
