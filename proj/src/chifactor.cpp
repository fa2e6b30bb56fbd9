#include "cuspl/chifactor.hpp"

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "cuspl/error.hpp"
#include "cuspl/quadrature.hpp"

namespace cuspl {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLog2Pi = std::log(2.0 * kPi);

// Monomial c * g_1^e_1 ... g_8^e_8.
using Exponents = std::array<int, kMaxChiOrder + 1>;  // index 1..8 used
using Poly = std::map<Exponents, long long>;

// h_0 = 1, h_{r+1} = h_r' + h_r g_1 with g_j' = g_{j+1}.
const std::vector<Poly>& ratio_polynomials() {
  static const std::vector<Poly> table = [] {
    std::vector<Poly> h(kMaxChiOrder + 1);
    h[0][Exponents{}] = 1;
    for (int r = 0; r < kMaxChiOrder; ++r) {
      Poly next;
      for (const auto& [e, c] : h[r]) {
        for (int j = 1; j < kMaxChiOrder; ++j) {
          if (e[j] == 0) continue;
          Exponents d = e;
          d[j] -= 1;
          d[j + 1] += 1;
          next[d] += c * e[j];
        }
        Exponents m = e;
        m[1] += 1;
        next[m] += c;
      }
      h[r + 1] = std::move(next);
    }
    return h;
  }();
  return table;
}

void check_order(int r) {
  if (r < 0 || r > kMaxChiOrder) {
    std::ostringstream os;
    os << "derivative order " << r << " outside [0, " << kMaxChiOrder << "]";
    throw DomainError(os.str());
  }
}

// G^(1..rmax)(s), index 0 unused.
std::vector<cplx> g_values(const ChiContext& ctx, int rmax, cplx s) {
  const double kap = ctx.kappa();
  const cplx a = 1.0 - s + kap;
  const cplx b = s + kap;
  std::vector<cplx> g(rmax + 1, 0.0);
  if (rmax >= 1) {
    g[1] = 2.0 * kLog2Pi - special::digamma(a, ctx.precision) - special::digamma(b, ctx.precision);
  }
  for (int j = 2; j <= rmax; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    g[j] = sign * special::polygamma(j - 1, a, ctx.precision) -
           special::polygamma(j - 1, b, ctx.precision);
  }
  return g;
}

std::vector<cplx> ratios_unchecked(const ChiContext& ctx, int rmax, cplx s) {
  const auto g = g_values(ctx, rmax, s);
  const auto& polys = ratio_polynomials();
  std::vector<cplx> out(rmax + 1);
  for (int r = 0; r <= rmax; ++r) {
    cplx acc = 0.0;
    for (const auto& [e, c] : polys[r]) {
      cplx term = static_cast<double>(c);
      for (int j = 1; j <= r; ++j) {
        for (int p = 0; p < e[j]; ++p) term *= g[j];
      }
      acc += term;
    }
    out[r] = acc;
  }
  return out;
}

}  // namespace

ChiContext::ChiContext(int k, special::PrecisionPolicy pol) : weight(k), precision(pol) {
  if (k < 12 || k % 2 != 0) {
    std::ostringstream os;
    os << "ChiContext: weight must be even and at least 12, got " << k;
    throw DomainError(os.str());
  }
  precision.validate();
}

ChiContext::ChiContext(const CuspForm& form, special::PrecisionPolicy pol)
    : ChiContext(form.weight(), pol) {}

cplx chi(const ChiContext& ctx, cplx s) {
  const double kap = ctx.kappa();
  const cplx a = 1.0 - s + kap;
  const cplx b = s + kap;
  if (b.imag() == 0.0 && b.real() <= 0.0 && b.real() == std::floor(b.real())) return 0.0;
  const double sign = ((ctx.weight / 2) % 2 == 0) ? 1.0 : -1.0;
  const cplx lg = special::log_gamma(a, ctx.precision) - special::log_gamma(b, ctx.precision);
  return sign * std::exp((2.0 * s - 1.0) * kLog2Pi + lg);
}

cplx chi_asymptotic(const ChiContext& ctx, cplx s) {
  const double sigma = s.real();
  const double t = s.imag();
  if (std::abs(t) < 5.0) throw DomainError("chi_asymptotic: requires |t| >= 5");
  const double at = std::abs(t);
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  const double sign = ((ctx.weight / 2) % 2 == 0) ? 1.0 : -1.0;
  const double modulus = std::exp((2.0 * sigma - 1.0) * kLog2Pi + (1.0 - 2.0 * sigma) * std::log(at));
  const double phase = 0.5 * kPi * (1.0 - ctx.weight) * sgn - 2.0 * t * std::log(at / (2.0 * kPi * std::numbers::e));
  return sign * std::polar(modulus, phase);
}

bool in_ratio_domain(const ChiContext& ctx, cplx s) {
  return !(std::abs(s.real()) >= 0.5 * ctx.weight - 1.0 && std::abs(s.imag()) <= 0.5);
}

std::vector<cplx> chi_log_deriv_ratios(const ChiContext& ctx, int rmax, cplx s) {
  check_order(rmax);
  if (!in_ratio_domain(ctx, s)) {
    std::ostringstream os;
    os << "chi_log_deriv_ratio: s = " << s << " lies outside the holomorphy domain";
    throw DomainError(os.str());
  }
  return ratios_unchecked(ctx, rmax, s);
}

cplx chi_log_deriv_ratio(const ChiContext& ctx, int r, cplx s) {
  return chi_log_deriv_ratios(ctx, r, s)[r];
}

cplx chi_derivative(const ChiContext& ctx, int r, cplx s) {
  if (r == 0) return chi(ctx, s);
  return chi(ctx, s) * chi_log_deriv_ratio(ctx, r, s);
}

cplx chi_g(const ChiContext& ctx, int j, cplx s) {
  if (j < 1 || j > kMaxChiOrder + 1) throw DomainError("chi_g: order outside [1, 9]");
  return g_values(ctx, j, s)[j];
}

void ContourSpec::validate() const {
  if (!(radius > 0.0)) throw DomainError("ContourSpec: radius must be positive");
  if (nodes_per_arc < 16 || nodes_per_segment < 16) {
    throw DomainError("ContourSpec: node counts must be at least 16");
  }
  if (!(right_center > left_center)) throw DomainError("ContourSpec: centres out of order");
  if (!(tol > 0.0) || !(abs_tol >= 0.0) || max_doublings < 0) {
    throw DomainError("ContourSpec: bad tolerances");
  }
}

ContourSpec default_contour(cplx s, int jmax) {
  ContourSpec c;
  const double sigma = s.real();
  c.left_center = -0.5 - sigma;
  c.right_center = 1.5 - sigma;
  c.radius = std::max(std::sqrt(std::abs(s.imag())), jmax - sigma + 0.5);
  return c;
}

ContourSpec default_contour(cplx s, int jmax, double rho) {
  ContourSpec c = default_contour(s, jmax);
  // the integrand scales like (rho |t|)^Re(w); keep that spread below e^12
  const double spread = std::abs(std::log(rho * std::abs(s.imag())));
  if (spread > 0.0) c.radius = std::max(std::min(c.radius, 12.0 / spread), jmax - s.real() + 0.5);
  return c;
}

namespace {

// One quadrature pass with n nodes per piece (composite 16-point panels).
void contour_pass(const ChiContext& ctx, int jmax, int rmax, cplx s, double rho,
                  const ContourSpec& c, int n_arc, int n_seg, std::vector<cplx>& acc) {
  const double kap = ctx.kappa();
  const double sgn = s.imag() >= 0.0 ? 1.0 : -1.0;
  const cplx L(std::log(rho), -0.5 * kPi * sgn);
  const cplx lg0 = special::log_gamma(s + kap, ctx.precision);
  const int cols = rmax + 1;
  std::fill(acc.begin(), acc.end(), cplx(0.0));
  std::vector<cplx> invp(jmax + 1);

  auto add_node = [&](cplx w, cplx dw_weight) {
    const auto h = ratios_unchecked(ctx, rmax, 1.0 - s - w);
    const cplx g = std::exp(special::log_gamma(s + w + kap, ctx.precision) - lg0 + w * L);
    cplx inv = 1.0 / w;
    for (int j = 0; j <= jmax; ++j) {
      if (j > 0) inv /= (w + static_cast<double>(j));
      const cplx base = dw_weight * g * inv;
      for (int r = 0; r <= rmax; ++r) acc[j * cols + r] += base * h[r];
    }
  };

  const quad::GaussRule& gl = quad::gauss_legendre(16);
  auto arc = [&](double center, double th0, double th1, int n) {
    const int panels = n / 16;
    const double h = (th1 - th0) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = th0 + (p + 0.5) * h;
      for (int i = 0; i < 16; ++i) {
        const double th = mid + 0.5 * h * gl.x[i];
        const cplx e = std::polar(1.0, th);
        const cplx w = center + c.radius * e;
        add_node(w, 0.5 * h * gl.w[i] * cplx(0.0, c.radius) * e);
      }
    }
  };
  auto segment = [&](double x0, double x1, double y, int n) {
    const int panels = n / 16;
    const double h = (x1 - x0) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = x0 + (p + 0.5) * h;
      for (int i = 0; i < 16; ++i) {
        const double x = mid + 0.5 * h * gl.x[i];
        add_node(cplx(x, y), 0.5 * h * gl.w[i]);
      }
    }
  };

  arc(c.right_center, -0.5 * kPi, 0.5 * kPi, n_arc);
  segment(c.right_center, c.left_center, c.radius, n_seg);
  arc(c.left_center, 0.5 * kPi, 1.5 * kPi, n_arc);
  segment(c.left_center, c.right_center, -c.radius, n_seg);

  const cplx scale = 1.0 / cplx(0.0, 2.0 * kPi);
  for (auto& v : acc) v *= scale;
}

}  // namespace

GammaTable gamma_table(const ChiContext& ctx, int jmax, int rmax, cplx s, double rho,
                       const ContourSpec& contour) {
  check_order(rmax);
  if (jmax < 0 || jmax > 40) throw DomainError("gamma_table: j outside [0, 40]");
  if (!(rho > 0.0)) throw DomainError("gamma_table: rho must be positive");
  if (std::abs(s.imag()) < 10.0) throw DomainError("gamma_j: requires |t| >= 10");
  contour.validate();
  if (contour.left_center - contour.radius > -jmax - 0.25 ||
      contour.radius >= std::abs(s.imag()) - 0.5) {
    std::ostringstream os;
    os << "gamma_j: contour (radius " << contour.radius << ") does not separate the poles 0..-"
       << jmax << " from the gamma-factor poles";
    throw DomainError(os.str());
  }
  const std::size_t size = static_cast<std::size_t>((jmax + 1) * (rmax + 1));
  std::vector<cplx> prev(size), next(size);
  int n_arc = (contour.nodes_per_arc + 15) / 16 * 16;
  int n_seg = (contour.nodes_per_segment + 15) / 16 * 16;
  contour_pass(ctx, jmax, rmax, s, rho, contour, n_arc, n_seg, prev);
  int nodes = 2 * (n_arc + n_seg);
  double worst = 0.0;
  for (int d = 0; d < contour.max_doublings; ++d) {
    n_arc *= 2;
    n_seg *= 2;
    contour_pass(ctx, jmax, rmax, s, rho, contour, n_arc, n_seg, next);
    nodes += 2 * (n_arc + n_seg);
    bool ok = true;
    worst = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      const double diff = std::abs(next[i] - prev[i]);
      worst = std::max(worst, diff);
      if (diff > contour.tol * std::abs(next[i]) + contour.abs_tol) ok = false;
    }
    prev.swap(next);
    if (ok) {
      GammaTable t;
      t.jmax = jmax;
      t.rmax = rmax;
      t.values = std::move(prev);
      t.err_estimate = worst;
      t.nodes_used = nodes;
      return t;
    }
  }
  std::ostringstream os;
  os << "gamma_j: node doubling did not converge at s = " << s << ", rho = " << rho
     << " (last change " << worst << ", nodes per arc " << n_arc << ")";
  throw ConvergenceError(os.str());
}

GammaTable gamma_table(const ChiContext& ctx, int jmax, int rmax, cplx s, double rho) {
  return gamma_table(ctx, jmax, rmax, s, rho, default_contour(s, jmax, rho));
}

cplx gamma_j(const ChiContext& ctx, int j, int r, cplx s, double rho, const ContourSpec& contour) {
  return gamma_table(ctx, j, r, s, rho, contour)(j, r);
}

cplx gamma_j(const ChiContext& ctx, int j, int r, cplx s, double rho) {
  return gamma_table(ctx, j, r, s, rho)(j, r);
}

}  // namespace cuspl
