#include "cuspl/smoothing.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <sstream>

#include "cuspl/error.hpp"
#include "cuspl/quadrature.hpp"
#include "jet.hpp"

namespace cuspl {

using detail::Jet;

namespace {

// Beyond this |u| the logistic factor is below 1e-304 with all derivatives.
constexpr double kFlatCut = 700.0;

// Standard bump applied to a jet argument.
Jet bump(const Jet& x) {
  const double x0 = x.value();
  if (x0 <= 0.5) return Jet::constant(1.0, x.order);
  if (x0 >= 2.0) return Jet::constant(0.0, x.order);
  // phi = 1 / (1 + e^u), u = 1/(2 - x) - 1/(x - 1/2)
  const Jet u = reciprocal(2.0 - x) - reciprocal(x - 0.5);
  const double u0 = u.value();
  if (u0 > kFlatCut) return Jet::constant(0.0, x.order);
  if (u0 < -kFlatCut) return Jet::constant(1.0, x.order);
  if (u0 > 0.0) {
    const Jet e = detail::exp(u * -1.0);
    return e / (e + 1.0);
  }
  const Jet e = detail::exp(u);
  return reciprocal(e + 1.0);
}

}  // namespace

struct SmoothingFunction::NormCache {
  std::mutex mu;
  std::array<double, kMaxSmoothingOrder + 1> value{};
  std::array<bool, kMaxSmoothingOrder + 1> ready{};
};

SmoothingFunction::SmoothingFunction(Kind kind, double alpha, double t_abs, bool reflected,
                                     int max_order)
    : kind_(kind),
      alpha_(alpha),
      t_abs_(t_abs),
      scale_(kind == Kind::psi_alpha ? std::pow(t_abs, alpha) : 1.0),
      reflected_(reflected),
      max_order_(max_order),
      norms_(std::make_shared<NormCache>()) {}

std::pair<double, double> SmoothingFunction::transition() const {
  const double a = 1.0 - 0.5 / scale_;
  const double b = 1.0 + 1.0 / scale_;
  if (reflected_) return {1.0 / b, 1.0 / a};
  return {a, b};
}

std::vector<double> SmoothingFunction::derivatives(int jmax, double rho) const {
  if (jmax < 0 || jmax > max_order_) {
    std::ostringstream os;
    os << "smoothing derivative order " << jmax << " outside [0, " << max_order_ << "]";
    throw DomainError(os.str());
  }
  if (!(rho >= 0.0)) throw DomainError("smoothing functions are defined on [0, inf)");
  std::vector<double> out(jmax + 1, 0.0);
  const auto [lo, hi] = transition();
  if (rho <= lo || rho >= hi) {
    out[0] = rho <= lo ? 1.0 : 0.0;
    return out;
  }
  Jet x = Jet::variable(rho, jmax);
  if (reflected_) x = reciprocal(x);
  if (kind_ == Kind::psi_alpha) x = (x - 1.0) * scale_ + 1.0;
  Jet f = bump(x);
  if (reflected_) f = 1.0 - f;
  for (int j = 0; j <= jmax; ++j) out[j] = f.derivative(j);
  return out;
}

double SmoothingFunction::derivative(int j, double rho) const { return derivatives(j, rho)[j]; }

SmoothingFunction SmoothingFunction::reflect() const {
  return SmoothingFunction(kind_, alpha_, t_abs_, !reflected_, max_order_);
}

SmoothingFunction make_phi(int max_order) {
  if (max_order < 1 || max_order > kMaxSmoothingOrder) {
    throw DomainError("make_phi: max_order must lie in [1, 24]");
  }
  return SmoothingFunction(SmoothingFunction::Kind::standard_bump, 0.0, 0.0, false, max_order);
}

SmoothingFunction make_psi_alpha(const SmoothingFunction& phi, double alpha, double t_abs) {
  if (!(alpha >= 0.0 && alpha <= 0.5)) throw DomainError("make_psi_alpha: alpha must lie in [0, 1/2]");
  if (!(t_abs >= 10.0)) throw DomainError("make_psi_alpha: t_abs must be at least 10");
  if (phi.kind() != SmoothingFunction::Kind::standard_bump || phi.is_reflected()) {
    throw DomainError("make_psi_alpha: base function must be the standard bump");
  }
  return SmoothingFunction(SmoothingFunction::Kind::psi_alpha, alpha, t_abs, false, phi.max_order());
}

double phi_deriv(const SmoothingFunction& phi, int j, double rho) { return phi.derivative(j, rho); }

double phi_norm(const SmoothingFunction& phi, int j) {
  if (j < 0 || j > phi.max_order()) throw DomainError("phi_norm: order outside [0, max_order]");
  {
    std::lock_guard<std::mutex> lock(phi.norms_->mu);
    if (phi.norms_->ready[j]) return phi.norms_->value[j];
  }
  const auto [a, b] = phi.transition();
  auto f = [&phi, j](double x) { return phi.derivative(j, x); };
  // split the transition at sign changes so each piece is smooth; values in
  // the flat tails below the noise floor are ignored
  constexpr int kGrid = 4000;
  std::vector<double> xs(kGrid), vs(kGrid);
  double peak = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    xs[i] = a + (b - a) * (i + 0.5) / kGrid;
    vs[i] = f(xs[i]);
    peak = std::max(peak, std::abs(vs[i]));
  }
  const double floor = 1e-13 * peak;
  std::vector<double> cuts = {a};
  int last = -1;
  for (int i = 0; i < kGrid; ++i) {
    if (std::abs(vs[i]) <= floor) continue;
    if (last >= 0 && ((vs[last] < 0.0) != (vs[i] < 0.0))) {
      boost::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(
          f, xs[last], xs[i], vs[last], vs[i], boost::math::tools::eps_tolerance<double>(52), iters);
      cuts.push_back(0.5 * (r.first + r.second));
    }
    last = i;
  }
  cuts.push_back(b);
  double total = (j == 0) ? a : 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double piece = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, cuts[i], cuts[i + 1], 10, 1e-12);
    total += std::abs(piece);
  }
  std::lock_guard<std::mutex> lock(phi.norms_->mu);
  phi.norms_->value[j] = total;
  phi.norms_->ready[j] = true;
  return total;
}

std::complex<double> k_phi(const SmoothingFunction& phi, std::complex<double> w, int l) {
  using cplx = std::complex<double>;
  if (l < 0) throw DomainError("k_phi: l must be non-negative");
  if (l + 1 > phi.max_order()) throw DomainError("k_phi: l + 1 exceeds the smoothing max_order");
  if (w == cplx(0.0, 0.0)) return 1.0;
  for (int i = 1; i <= l; ++i) {
    if (w == cplx(-i, 0.0)) {
      std::ostringstream os;
      os << "k_phi: w = " << -i << " is a pole of the l = " << l << " representation";
      throw DomainError(os.str());
    }
  }
  const auto [a, b] = phi.transition();
  auto integrand = [&](double rho) {
    return phi.derivative(l + 1, rho) * std::exp((w + static_cast<double>(l)) * std::log(rho));
  };
  // rounding floor: L1 mass of the integrand
  const double mass = phi_norm(phi, l + 1) *
                      std::max(std::pow(a, w.real() + l), std::pow(b, w.real() + l));
  int panels = 16;
  cplx prev = quad::composite_gl(integrand, a, b, panels, 20);
  for (; panels <= 2048; panels *= 2) {
    const cplx next = quad::composite_gl(integrand, a, b, 2 * panels, 20);
    if (std::abs(next - prev) <= 1e-14 * std::max({1.0, std::abs(next), mass})) {
      prev = next;
      break;
    }
    prev = next;
    if (panels == 2048) {
      std::ostringstream os;
      os << "k_phi: quadrature did not settle at w = " << w << ", l = " << l;
      throw ConvergenceError(os.str());
    }
  }
  cplx denom = 1.0;
  for (int i = 1; i <= l; ++i) denom *= w + static_cast<double>(i);
  const double sign = (l % 2 == 0) ? -1.0 : 1.0;
  return sign * prev / denom;
}

}  // namespace cuspl
