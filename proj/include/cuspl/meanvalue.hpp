#pragma once

// Second moments I(T) = int_0^T |L^(m)(sigma + it)|^2 dt, the Rankin constant
// C_f and the leading-term predictions they are compared against.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cuspl/forms.hpp"
#include "cuspl/lseries.hpp"

namespace cuspl {

constexpr double kMomentTMax = 2000.0;
constexpr int kMomentMaxDerivative = 2;

struct RankinEstimate {
  std::vector<std::size_t> x_grid;
  std::vector<double> partial_slopes;  // sum_{n <= x} lambda(n)^2 / x
  double c_f = 0.0;
  double fluctuation = 0.0;  // max relative deviation of a slope from c_f
};

/// Slopes at x_max / 16, x_max / 8, ..., x_max; c_f is the slope at x_max.
RankinEstimate rankin_constant(const CuspForm& form, std::size_t x_max);

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Fraction&) const = default;
};

/// 1/(2m+1) + sum_{r=0}^{2m} (-2)^(2m-r)/(r+1) sum_{r1+r2=r} C(m,r1) C(m,r2), reduced.
Fraction a_fm_prefactor(int m);

/// a_fm_prefactor(m) * c_f; m <= 4, c_f > 0.
double a_fm(int m, double c_f);

struct TailSum {
  double value = 0.0;        // partial + tail_estimate
  double partial = 0.0;      // sum_{n <= n_used}
  double tail_estimate = 0.0; // c_f int_N^inf (log x)^(2m) x^(-2 sigma) dx
  double tail_bound = 0.0;   // rigorous bound on the omitted terms from d(n)^2
  std::size_t n_used = 0;
};

/// sum_n lambda(n)^2 (log n)^(2m) n^(-2 sigma), sigma in (1/2, 1].
TailSum tail_sum(const CuspForm& form, int m, double sigma);

/// Rigorous bound for sum_{n > N} d(n)^2 (log n)^(2m) n^(-2 sigma).
double divisor_square_tail_bound(int m, double sigma, std::size_t N);

struct QuadratureSpec {
  double panel_width = 0.0;  // 0 selects min(0.25, pi / log(T / 2 pi))
  int nodes_per_panel = 8;
  int refine_stride = 16;    // every stride-th panel is re-integrated on halves
  double refine_tol = 0.01;  // allowed extrapolated disagreement, relative to the total
  Method method = Method::automatic;
};

struct MomentReport {
  int weight = 0;
  int m = 0;
  double sigma = 0.0;
  std::vector<double> T_grid;
  std::vector<double> I_values;
  std::vector<double> predictions;
  std::vector<double> ratios;
  std::string prediction_kind;  // "A_fm T (log T)^(2m+1)" or "T tail_sum"
  double c_f = 0.0;
  double tail_sum = 0.0;
  double initial_piece = 0.0;  // int_0^1
  double panel_width = 0.0;
  int nodes_per_panel = 0;
  std::size_t panels = 0;
  std::vector<std::size_t> method_counts;  // indexed by Method
  double refinement_disagreement = 0.0;    // extrapolated, relative to I(T_max)
};

/// Panel width used for a grid topping out at T.
double default_panel_width(double T);

/// I(T) with the leading-term prediction of the matching sigma regime.
MomentReport second_moment(const CuspForm& form, int m, double sigma, double T,
                           const QuadratureSpec& quad = {});

/// I(T) on an ascending grid; panels below each T are shared.
MomentReport moment_report(const CuspForm& form, int m, double sigma,
                           const std::vector<double>& T_grid, const QuadratureSpec& quad = {});

/// Header T,I,prediction,ratio and one row per grid point, 17 significant digits.
void write_moment_csv(const MomentReport& report, std::ostream& out);

}  // namespace cuspl
