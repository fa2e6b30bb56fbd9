#pragma once

// chi(s) = (-1)^(k/2) (2 pi)^(2s-1) Gamma(1-s+kappa) / Gamma(s+kappa), kappa = (k-1)/2,
// its derivative ratios chi^(r)/chi and the contour integrals gamma_j^(r)(s, rho).

#include <complex>
#include <vector>

#include "cuspl/forms.hpp"
#include "cuspl/special.hpp"

namespace cuspl {

using cplx = std::complex<double>;

constexpr int kMaxChiOrder = 8;

struct ChiContext {
  int weight = 12;
  special::PrecisionPolicy precision{};

  ChiContext() = default;
  explicit ChiContext(int k, special::PrecisionPolicy pol = {});
  explicit ChiContext(const CuspForm& form, special::PrecisionPolicy pol = {});

  double kappa() const { return 0.5 * (weight - 1); }
};

cplx chi(const ChiContext& ctx, cplx s);

/// Leading Stirling approximant; |t| >= 5.
cplx chi_asymptotic(const ChiContext& ctx, cplx s);

/// chi^(r)(s) / chi(s), 0 <= r <= 8, for s in the holomorphy domain.
cplx chi_log_deriv_ratio(const ChiContext& ctx, int r, cplx s);

/// chi^(r)/chi for r = 0..rmax at one point.
std::vector<cplx> chi_log_deriv_ratios(const ChiContext& ctx, int rmax, cplx s);

cplx chi_derivative(const ChiContext& ctx, int r, cplx s);

/// G^(j)(s) = d^(j-1)/ds^(j-1) G^(1)(s), where G^(1) = chi'/chi.
cplx chi_g(const ChiContext& ctx, int j, cplx s);

/// True when s lies in the holomorphy domain of the ratios:
/// not (|sigma| >= k/2 - 1 and |t| <= 1/2).
bool in_ratio_domain(const ChiContext& ctx, cplx s);

/// The stadium contour: right half-circle centred at 3/2 - sigma, top segment,
/// left half-circle centred at -1/2 - sigma, bottom segment; counterclockwise.
struct ContourSpec {
  double left_center = 0.0;
  double right_center = 0.0;
  double radius = 0.0;
  int nodes_per_arc = 64;
  int nodes_per_segment = 64;
  double tol = 1e-9;      // relative node-doubling tolerance
  double abs_tol = 1e-15; // absolute floor for tiny values
  int max_doublings = 6;

  void validate() const;
};

/// Default contour for s; the radius is sqrt|t|, widened when needed so that
/// the poles 0, -1, ..., -jmax sit at least 1/2 inside.
ContourSpec default_contour(cplx s, int jmax);
/// Same, with the radius shrunk when rho |t| is far from 1.
ContourSpec default_contour(cplx s, int jmax, double rho);

struct GammaTable {
  int jmax = 0;
  int rmax = 0;
  std::vector<cplx> values;  // values[j * (rmax + 1) + r]
  double err_estimate = 0.0;
  int nodes_used = 0;

  cplx operator()(int j, int r) const { return values[j * (rmax + 1) + r]; }
};

/// gamma_j^(r)(s, rho) for all 0 <= j <= jmax, 0 <= r <= rmax on shared nodes.
GammaTable gamma_table(const ChiContext& ctx, int jmax, int rmax, cplx s, double rho,
                       const ContourSpec& contour);
GammaTable gamma_table(const ChiContext& ctx, int jmax, int rmax, cplx s, double rho);

cplx gamma_j(const ChiContext& ctx, int j, int r, cplx s, double rho, const ContourSpec& contour);
cplx gamma_j(const ChiContext& ctx, int j, int r, cplx s, double rho);

}  // namespace cuspl
