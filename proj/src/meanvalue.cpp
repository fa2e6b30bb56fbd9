#include "cuspl/meanvalue.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cuspl/error.hpp"
#include "cuspl/format.hpp"
#include "cuspl/parallel.hpp"
#include "cuspl/quadrature.hpp"

namespace cuspl {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kRankinMinX = 1000;
constexpr std::size_t kTailMinN = 1024;
constexpr double kTailRelTol = 1e-8;
constexpr int kInitialNodes = 16;

// int_L^inf u^p e^(-a u) du = p! e^(-aL) sum_{i<=p} (aL)^i / i! / a^(p+1)
double upper_moment(int p, double a, double L) {
  const double z = a * L;
  double term = 1.0, sum = 1.0;
  for (int i = 1; i <= p; ++i) {
    term *= z / i;
    sum += term;
  }
  double fact = 1.0;
  for (int i = 2; i <= p; ++i) fact *= i;
  return fact * std::exp(-z) * sum / std::pow(a, p + 1);
}

void check_sigma_tail(double sigma) {
  if (!(sigma > 0.5 && sigma <= 1.0)) {
    std::ostringstream os;
    os << "tail_sum: sigma = " << sigma << " outside (1/2, 1]; the series diverges at 1/2";
    throw DomainError(os.str());
  }
}

std::int64_t binom64(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Fraction add(Fraction x, Fraction y) {
  const std::int64_t g = std::gcd(x.den, y.den);
  Fraction z{x.num * (y.den / g) + y.num * (x.den / g), x.den / g * y.den};
  const std::int64_t h = std::gcd(z.num < 0 ? -z.num : z.num, z.den);
  if (h > 1) {
    z.num /= h;
    z.den /= h;
  }
  return z;
}

}  // namespace

RankinEstimate rankin_constant(const CuspForm& form, std::size_t x_max) {
  if (x_max < kRankinMinX) {
    std::ostringstream os;
    os << "rankin_constant: x_max = " << x_max << " below " << kRankinMinX;
    throw DomainError(os.str());
  }
  if (x_max > form.n_max()) {
    std::ostringstream os;
    os << "rankin_constant: x_max = " << x_max << " exceeds the coefficient table (" << form.n_max() << ")";
    throw DomainError(os.str());
  }
  RankinEstimate est;
  for (int i = 4; i >= 0; --i) est.x_grid.push_back(x_max >> i);
  const auto lam = form.lambdas();
  double acc = 0.0;
  std::size_t n = 1;
  for (std::size_t x : est.x_grid) {
    for (; n <= x; ++n) acc += lam[n] * lam[n];
    est.partial_slopes.push_back(acc / static_cast<double>(x));
  }
  est.c_f = est.partial_slopes.back();
  for (double v : est.partial_slopes) {
    est.fluctuation = std::max(est.fluctuation, std::abs(v - est.c_f) / est.c_f);
  }
  return est;
}

Fraction a_fm_prefactor(int m) {
  if (m < 0 || m > kMaxDerivative) throw DomainError("a_fm: m must lie in [0, 4]");
  Fraction total{1, 2 * m + 1};
  for (int r = 0; r <= 2 * m; ++r) {
    std::int64_t conv = 0;
    for (int r1 = std::max(0, r - m); r1 <= std::min(m, r); ++r1) conv += binom64(m, r1) * binom64(m, r - r1);
    std::int64_t pw = 1;
    for (int i = 0; i < 2 * m - r; ++i) pw *= -2;
    total = add(total, Fraction{pw * conv, r + 1});
  }
  return total;
}

double a_fm(int m, double c_f) {
  if (!(c_f > 0.0)) throw DomainError("a_fm: c_f must be positive");
  return a_fm_prefactor(m).value() * c_f;
}

double divisor_square_tail_bound(int m, double sigma, std::size_t N) {
  check_sigma_tail(sigma);
  const double L = std::log(static_cast<double>(N));
  // (log n)^(2m) n^(-2 sigma) must be decreasing beyond N
  if (!(sigma * L > m)) throw DomainError("divisor_square_tail_bound: N too small for monotone weights");
  // sum_{n <= x} d(n)^2 <= x (1 + log x)^3 and partial summation
  const double a = 2.0 * sigma - 1.0;
  const double c[4] = {1.0, 3.0, 3.0, 1.0};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) total += c[i] * upper_moment(2 * m + i, a, L);
  return 2.0 * sigma * total;
}

TailSum tail_sum(const CuspForm& form, int m, double sigma) {
  check_sigma_tail(sigma);
  if (m < 0 || m > kMaxDerivative) throw DomainError("tail_sum: m must lie in [0, 4]");
  const auto lam = form.lambdas();
  const std::size_t cap = form.n_max();
  TailSum out;
  double acc = 0.0;
  std::size_t n = 1;
  std::size_t N = std::min(kTailMinN, cap);
  for (;;) {
    for (; n <= N; ++n) {
      const double ln = std::log(static_cast<double>(n));
      const double lp = (m == 0) ? 1.0 : std::pow(ln, 2 * m);
      acc += lam[n] * lam[n] * lp * std::exp(-2.0 * sigma * ln);
    }
    out.tail_bound = divisor_square_tail_bound(m, sigma, N);
    if (out.tail_bound <= kTailRelTol * acc || N == cap) break;
    N = std::min(2 * N, cap);
  }
  out.partial = acc;
  out.n_used = N;
  const double c_f = rankin_constant(form, cap).c_f;
  out.tail_estimate = c_f * upper_moment(2 * m, 2.0 * sigma - 1.0, std::log(static_cast<double>(N)));
  out.value = out.partial + out.tail_estimate;
  return out;
}

double default_panel_width(double T) {
  const double lg = std::log(T / (2.0 * kPi));
  if (lg <= kPi / 0.25) return 0.25;
  return kPi / lg;
}

namespace {

struct Integrand {
  const CuspForm& form;
  int m;
  double sigma;
  Method method;

  EvalResult operator()(double t) const {
    const cplx s(sigma, t);
    if (method == Method::oracle) {
      if (m == 0) return oracle_eval(form, s, kOracleHardCap);
      return oracle_derivative(form, m, s, 0.25, 32, 1e-8, kOracleHardCap);
    }
    EvalRequest req;
    req.form = &form;
    req.m = m;
    req.s = s;
    req.method = method;
    return eval(req);
  }
};

// Evaluates f at all points, in parallel, rethrowing the first failure.
template <class F>
std::vector<EvalResult> evaluate_all(const std::vector<double>& ts, const F& f) {
  std::vector<EvalResult> out(ts.size());
  std::exception_ptr failure;
  const long count = static_cast<long>(ts.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(thread_count())
  for (long i = 0; i < count; ++i) {
    try {
      out[i] = f(ts[i]);
    } catch (...) {
#pragma omp critical(cuspl_moment_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Gauss-Legendre sum of |f|^2 on [a, b] from values at the mapped nodes.
double panel_sum(const quad::GaussRule& rule, const EvalResult* vals, double a, double b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) acc += rule.w[i] * std::norm(vals[i].value);
  return 0.5 * (b - a) * acc;
}

void push_nodes(const quad::GaussRule& rule, double a, double b, std::vector<double>& ts) {
  for (double x : rule.x) ts.push_back(0.5 * (a + b) + 0.5 * (b - a) * x);
}

}  // namespace

MomentReport moment_report(const CuspForm& form, int m, double sigma,
                           const std::vector<double>& T_grid, const QuadratureSpec& quad) {
  if (m < 0 || m > kMomentMaxDerivative) throw DomainError("moment_report: m must lie in [0, 2]");
  if (!(sigma >= 0.5 && sigma <= 1.0)) throw DomainError("moment_report: sigma must lie in [1/2, 1]");
  if (T_grid.empty()) throw DomainError("moment_report: empty T grid");
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    if (!(T_grid[i] > 10.0)) throw DomainError("moment_report: T must exceed 10");
    if (T_grid[i] > kMomentTMax) {
      std::ostringstream os;
      os << "moment_report: T = " << T_grid[i] << " exceeds the desk-scale cap " << kMomentTMax
         << " (cost grows like T^2)";
      throw DomainError(os.str());
    }
    if (i > 0 && !(T_grid[i] > T_grid[i - 1])) throw DomainError("moment_report: T grid must be ascending");
  }
  if (quad.nodes_per_panel < 2 || quad.refine_stride < 1) throw DomainError("moment_report: bad quadrature spec");
  if (quad.method == Method::oracle && T_grid.back() > kOracleHardCap) {
    throw DomainError("moment_report: the oracle evaluator is limited to T <= 1000");
  }
  if (quad.method == Method::dirichlet || quad.method == Method::afe_sharp) {
    throw DomainError("moment_report: evaluator must be auto, oracle or afe_smoothed");
  }

  const double T_max = T_grid.back();
  const double h = quad.panel_width > 0.0 ? quad.panel_width : default_panel_width(T_max);
  const auto& rule = quad::gauss_legendre(quad.nodes_per_panel);
  const std::size_t q = rule.x.size();
  const Integrand f{form, m, sigma, quad.method};
  const Integrand oracle_f{form, m, sigma, Method::oracle};

  // full panels [1 + k h, 1 + (k + 1) h] below T_max, then one partial panel per grid T
  const auto full_below = [&](double T) {
    return static_cast<std::size_t>(std::floor((T - 1.0) / h * (1.0 + 1e-15)));
  };
  const std::size_t K = full_below(T_max);
  std::vector<double> ts;
  ts.reserve((K + T_grid.size()) * q);
  for (std::size_t k = 0; k < K; ++k) push_nodes(rule, 1.0 + k * h, 1.0 + (k + 1) * h, ts);
  std::vector<double> tail_start(T_grid.size());
  for (std::size_t g = 0; g < T_grid.size(); ++g) {
    tail_start[g] = 1.0 + full_below(T_grid[g]) * h;
    push_nodes(rule, tail_start[g], std::max(tail_start[g], T_grid[g]), ts);
  }
  // refinement sample: halves of every stride-th full panel
  std::vector<std::size_t> sample;
  for (std::size_t k = 0; k < K; k += quad.refine_stride) sample.push_back(k);
  const std::size_t refine_at = ts.size();
  for (std::size_t k : sample) {
    const double a = 1.0 + k * h, b = a + h;
    push_nodes(rule, a, 0.5 * (a + b), ts);
    push_nodes(rule, 0.5 * (a + b), b, ts);
  }
  const auto vals = evaluate_all(ts, f);

  const auto& init_rule = quad::gauss_legendre(kInitialNodes);
  std::vector<double> init_ts;
  push_nodes(init_rule, 0.0, 1.0, init_ts);
  const auto init_vals = evaluate_all(init_ts, oracle_f);

  MomentReport rep;
  rep.weight = form.weight();
  rep.m = m;
  rep.sigma = sigma;
  rep.T_grid = T_grid;
  rep.panel_width = h;
  rep.nodes_per_panel = quad.nodes_per_panel;
  rep.panels = K;
  rep.method_counts.assign(5, 0);
  rep.initial_piece = panel_sum(init_rule, init_vals.data(), 0.0, 1.0);

  std::vector<double> panel(K);
  for (std::size_t k = 0; k < K; ++k) {
    panel[k] = panel_sum(rule, &vals[k * q], 1.0 + k * h, 1.0 + (k + 1) * h);
    ++rep.method_counts[static_cast<std::size_t>(vals[k * q].method)];
  }
  // ascending running total; each grid T adds its own partial panel
  double running = rep.initial_piece;
  std::size_t k = 0;
  for (std::size_t g = 0; g < T_grid.size(); ++g) {
    const std::size_t stop = full_below(T_grid[g]);
    for (; k < stop; ++k) running += panel[k];
    const std::size_t at = (K + g) * q;
    const double partial = panel_sum(rule, &vals[at], tail_start[g], std::max(tail_start[g], T_grid[g]));
    rep.I_values.push_back(running + partial);
  }

  double disagreement = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double a = 1.0 + sample[i] * h, b = a + h;
    const std::size_t at = refine_at + 2 * i * q;
    const double fine = panel_sum(rule, &vals[at], a, 0.5 * (a + b)) +
                        panel_sum(rule, &vals[at + q], 0.5 * (a + b), b);
    disagreement += std::abs(fine - panel[sample[i]]);
  }
  rep.refinement_disagreement =
      disagreement * static_cast<double>(quad.refine_stride) / std::max(rep.I_values.back(), 1e-300);
  if (rep.refinement_disagreement > quad.refine_tol) {
    std::ostringstream os;
    os << "moment_report: panel refinement changes I(T) by an estimated "
       << 100.0 * rep.refinement_disagreement << "% (limit " << 100.0 * quad.refine_tol << "%)";
    throw ConvergenceError(os.str());
  }

  const bool critical = sigma == 0.5;
  if (critical) {
    rep.c_f = rankin_constant(form, form.n_max()).c_f;
    rep.prediction_kind = "A_fm T (log T)^(2m+1)";
  } else {
    const TailSum ts_sum = tail_sum(form, m, sigma);
    rep.tail_sum = ts_sum.value;
    rep.c_f = rankin_constant(form, form.n_max()).c_f;
    rep.prediction_kind = "T tail_sum";
  }
  for (std::size_t g = 0; g < T_grid.size(); ++g) {
    const double T = T_grid[g];
    const double pred = critical ? a_fm(m, rep.c_f) * T * std::pow(std::log(T), 2 * m + 1) : T * rep.tail_sum;
    rep.predictions.push_back(pred);
    rep.ratios.push_back(rep.I_values[g] / pred);
  }
  return rep;
}

MomentReport second_moment(const CuspForm& form, int m, double sigma, double T, const QuadratureSpec& quad) {
  return moment_report(form, m, sigma, std::vector<double>{T}, quad);
}

void write_moment_csv(const MomentReport& report, std::ostream& out) {
  out << "T,I,prediction,ratio\n";
  for (std::size_t g = 0; g < report.T_grid.size(); ++g) {
    out << format_double(report.T_grid[g]) << ',' << format_double(report.I_values[g]) << ','
        << format_double(report.predictions[g]) << ',' << format_double(report.ratios[g]) << '\n';
  }
}

}  // namespace cuspl
