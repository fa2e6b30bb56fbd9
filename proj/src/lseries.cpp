#include "cuspl/lseries.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cuspl/error.hpp"
#include "cuspl/special.hpp"

namespace cuspl {

namespace {

constexpr double kPi = std::numbers::pi;

void check_m(int m) {
  if (m < 0 || m > kMaxDerivative) {
    std::ostringstream os;
    os << "derivative order m = " << m << " outside [0, " << kMaxDerivative << "]";
    throw DomainError(os.str());
  }
}

void check_capacity(const CuspForm& form, std::size_t n) {
  if (n > form.n_max()) {
    std::ostringstream os;
    os << "needs coefficients up to n = " << n << " but the table holds " << form.n_max();
    throw DomainError(os.str());
  }
}

void check_strip(cplx s, const char* fn) {
  if (!(s.real() >= 0.0 && s.real() <= 1.0) || !(std::abs(s.imag()) >= 10.0)) {
    std::ostringstream os;
    os << fn << ": requires 0 <= sigma <= 1 and |t| >= 10, got s = " << s;
    throw DomainError(os.str());
  }
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double ipow(double x, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= x;
  return r;
}

// lambda(n) (-log n)^m n^(-s)
inline cplx dirichlet_term(double lam, int m, cplx s, std::size_t n) {
  const double ln = std::log(static_cast<double>(n));
  return lam * ipow(-ln, m) * std::polar(std::exp(-s.real() * ln), -s.imag() * ln);
}

template <typename Term>
cplx blocked_sum(std::size_t n_begin, std::size_t n_end, Execution exec, Term term) {
  if (n_end < n_begin) return 0.0;
  if (exec == Execution::serial) {
    cplx acc = 0.0;
    for (std::size_t n = n_begin; n <= n_end; ++n) acc += term(n);
    return acc;
  }
  const std::size_t count = n_end - n_begin + 1;
  const std::size_t blocks = (count + kReductionBlock - 1) / kReductionBlock;
  std::vector<cplx> part(blocks, 0.0);
  const long nb = static_cast<long>(blocks);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (long b = 0; b < nb; ++b) {
    const std::size_t lo = n_begin + static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t hi = std::min(n_end, lo + kReductionBlock - 1);
    cplx acc = 0.0;
    for (std::size_t n = lo; n <= hi; ++n) acc += term(n);
    part[b] = acc;
  }
  cplx total = 0.0;
  for (const cplx& p : part) total += p;
  return total;
}


}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::dirichlet: return "dirichlet";
    case Method::oracle: return "oracle";
    case Method::afe_sharp: return "afe_sharp";
    case Method::afe_smoothed: return "afe_smoothed";
    case Method::automatic: return "auto";
  }
  return "auto";
}

Method method_from_string(const std::string& name) {
  if (name == "dirichlet") return Method::dirichlet;
  if (name == "oracle") return Method::oracle;
  if (name == "afe_sharp") return Method::afe_sharp;
  if (name == "afe_smoothed") return Method::afe_smoothed;
  if (name == "auto") return Method::automatic;
  throw DomainError("unknown method '" + name +
                    "' (expected dirichlet, oracle, afe_sharp, afe_smoothed or auto)");
}

cplx dirichlet_sum(const CuspForm& form, int m, cplx s, std::size_t n_begin, std::size_t n_end,
                   Execution exec) {
  check_m(m);
  if (n_begin < 1) n_begin = 1;
  check_capacity(form, n_end);
  const auto lam = form.lambdas();
  return blocked_sum(n_begin, n_end, exec,
                     [&](std::size_t n) { return dirichlet_term(lam[n], m, s, n); });
}

cplx smoothed_dirichlet_sum(const CuspForm& form, int m, cplx s, double x,
                            const SmoothingFunction& phi, Execution exec) {
  check_m(m);
  if (!(x > 0.0)) throw DomainError("smoothed_dirichlet_sum: x must be positive");
  const double end = phi.transition().second * x;
  const auto n_end = static_cast<std::size_t>(std::ceil(end)) - 1;
  check_capacity(form, n_end);
  const auto lam = form.lambdas();
  return blocked_sum(1, n_end, exec, [&](std::size_t n) {
    const double w = phi.value(static_cast<double>(n) / x);
    return w == 0.0 ? cplx(0.0) : w * dirichlet_term(lam[n], m, s, n);
  });
}

double dirichlet_tail_bound(int m, double sigma, std::size_t N) {
  if (!(sigma > 1.0)) throw DomainError("dirichlet_tail_bound: requires sigma > 1");
  const double L = std::log(static_cast<double>(N));
  if (N < 2 || L <= m / sigma) return INFINITY;
  const double a = sigma - 1.0;
  const double X = a * L;
  // int_N^inf (log x)^j x^(-sigma) dx = Gamma(j+1, X) / a^(j+1)
  auto tail_integral = [&](int j) {
    double sum = 0.0, term = 1.0;
    for (int i = 0; i <= j; ++i) {
      if (i > 0) term *= X / i;
      sum += term;
    }
    return factorial(j) * std::exp(-X) * sum / ipow(a, j + 1);
  };
  const double f = ipow(L, m) * std::exp(-sigma * L);
  return static_cast<double>(N) * (L + 1.0) * f + tail_integral(m + 1) + 2.0 * tail_integral(m);
}

EvalResult dirichlet_eval(const CuspForm& form, int m, cplx s, double tol) {
  check_m(m);
  if (!(s.real() >= kDirichletSigmaMin)) {
    std::ostringstream os;
    os << "dirichlet_eval: s = " << s << " is outside absolute-convergence region (sigma >= "
       << kDirichletSigmaMin << ")";
    throw DomainError(os.str());
  }
  if (!(tol > 0.0)) throw DomainError("dirichlet_eval: tol must be positive");
  const std::size_t cap = form.n_max();
  for (std::size_t N = 64;; N *= 2) {
    const std::size_t n = std::min(N, cap);
    const double bound = dirichlet_tail_bound(m, s.real(), n);
    if (bound <= tol) {
      return {dirichlet_sum(form, m, s, 1, n), Method::dirichlet, bound, n};
    }
    if (n == cap) break;
  }
  const auto phi = make_phi(1);
  const double x = 0.5 * static_cast<double>(cap);
  const cplx full = smoothed_dirichlet_sum(form, m, s, x, phi);
  const cplx half = smoothed_dirichlet_sum(form, m, s, 0.5 * x, phi);
  const double err = std::abs(full - half);
  if (err > tol) {
    std::ostringstream os;
    os << "dirichlet_eval: smoothed sum of length " << cap << " changes by " << err
       << " on halving, above tol " << tol << " at s = " << s;
    throw ConvergenceError(os.str());
  }
  return {full, Method::dirichlet, err, cap};
}

namespace {

struct OracleValue {
  cplx value;
  double err;
  std::size_t terms;
};

// L(s) = sum lambda(n) [ n^-s Q(s+kappa, 2 pi n e^{i theta})
//                      + chi(s) n^{s-1} Q(1-s+kappa, 2 pi n e^{-i theta}) ]
OracleValue oracle_on_ray(const CuspForm& form, cplx s, double theta) {
  const ChiContext ctx(form);
  const double kap = ctx.kappa();
  const cplx a1 = s + kap;
  const cplx a2 = 1.0 - s + kap;
  const cplx lg1 = special::log_gamma(a1);
  const cplx lg2 = special::log_gamma(a2);
  const cplx chi_s = chi(ctx, s);
  const double abs_chi = std::abs(chi_s);
  const cplx e1 = std::polar(1.0, theta);
  const cplx e2 = std::conj(e1);
  const auto lam = form.lambdas();
  cplx sum1 = 0.0, sum2 = 0.0;
  int quiet = 0;
  double last = 0.0;
  for (std::size_t n = 1;; ++n) {
    check_capacity(form, n);
    const double x = 2.0 * kPi * static_cast<double>(n);
    const cplx q1 = special::regularized_upper_gamma(a1, x * e1, lg1);
    const cplx q2 = special::regularized_upper_gamma(a2, x * e2, lg2);
    const double ln = std::log(static_cast<double>(n));
    const cplx p1 = std::polar(std::exp(-s.real() * ln), -s.imag() * ln);
    const cplx p2 = std::polar(std::exp((s.real() - 1.0) * ln), s.imag() * ln);
    sum1 += lam[n] * p1 * q1;
    sum2 += lam[n] * p2 * q2;
    // termwise magnitude with |lambda(n)| <= d(n) <= 2 sqrt(n)
    last = 2.0 * std::sqrt(static_cast<double>(n)) * (std::abs(p1 * q1) + abs_chi * std::abs(p2 * q2));
    const double scale = std::max({std::abs(sum1), abs_chi * std::abs(sum2), 1e-300});
    quiet = (last < 1e-17 * scale) ? quiet + 1 : 0;
    if (quiet >= 4 && n >= 4) return {sum1 + chi_s * sum2, last + 1e-16 * scale, n};
  }
}

double ray_angle(const CuspForm& form, double t) {
  const double kap = 0.5 * (form.weight() - 1);
  const double c = std::min(1.0, kap / std::max(std::abs(t), 1e-300));
  const double th = std::acos(c);
  return t >= 0.0 ? th : -th;
}

void check_oracle_range(cplx s, double t_cap, double slack = 0.0) {
  if (!(t_cap > 0.0 && t_cap <= kOracleHardCap)) {
    std::ostringstream os;
    os << "oracle: t_cap must lie in (0, " << kOracleHardCap << "]";
    throw DomainError(os.str());
  }
  if (std::abs(s.imag()) > t_cap + slack) {
    std::ostringstream os;
    os << "oracle: |t| = " << std::abs(s.imag()) << " exceeds the cap " << t_cap
       << "; use afe_sharp or afe_smoothed";
    throw DomainError(os.str());
  }
}

}  // namespace

EvalResult oracle_eval(const CuspForm& form, cplx s, double t_cap) {
  check_oracle_range(s, t_cap);
  const auto r = oracle_on_ray(form, s, ray_angle(form, s.imag()));
  return {r.value, Method::oracle, r.err, r.terms};
}

std::vector<EvalResult> oracle_derivatives(const CuspForm& form, int m, cplx s, double radius,
                                           int nodes, double tol, double t_cap) {
  check_m(m);
  if (!(radius > 0.0 && radius <= 1.0)) throw DomainError("oracle_derivative: radius must lie in (0, 1]");
  if (nodes < 8 || nodes % 2 != 0) throw DomainError("oracle_derivative: nodes must be even and >= 8");
  check_oracle_range(s, t_cap, radius);
  const double theta = ray_angle(form, s.imag());
  std::vector<EvalResult> out(m + 1);
  const auto centre = oracle_on_ray(form, s, theta);
  out[0] = {centre.value, Method::oracle, centre.err, centre.terms};
  if (m == 0) return out;
  std::vector<cplx> samples(nodes);
  std::size_t terms = centre.terms;
  double sample_err = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const cplx z = s + std::polar(radius, 2.0 * kPi * k / nodes);
    const auto v = oracle_on_ray(form, z, theta);
    samples[k] = v.value;
    terms += v.terms;
    sample_err = std::max(sample_err, v.err);
  }
  for (int j = 1; j <= m; ++j) {
    cplx fine = 0.0, coarse = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const cplx c = samples[k] * std::polar(1.0, -2.0 * kPi * j * k / nodes);
      fine += c;
      if (k % 2 == 0) coarse += c;
    }
    const double scale = factorial(j) / ipow(radius, j);
    fine *= scale / static_cast<double>(nodes);
    coarse *= scale / static_cast<double>(nodes / 2);
    const double diff = std::abs(fine - coarse);
    if (diff > tol * std::max(1.0, std::abs(fine))) {
      std::ostringstream os;
      os << "oracle_derivative: node doubling disagrees by " << diff << " for m = " << j
         << " at s = " << s << " (radius " << radius << ", nodes " << nodes << ")";
      throw ConvergenceError(os.str());
    }
    out[j] = {fine, Method::oracle, diff + scale * sample_err, terms};
  }
  return out;
}

EvalResult oracle_derivative(const CuspForm& form, int m, cplx s, double radius, int nodes,
                             double tol, double t_cap) {
  return oracle_derivatives(form, m, s, radius, nodes, tol, t_cap)[m];
}

int min_correction_depth(int weight) { return (weight + 2) / 2; }

EvalResult afe_sharp(const CuspForm& form, int m, cplx s) {
  check_m(m);
  check_strip(s, "afe_sharp");
  const ChiContext ctx(form);
  const double at = std::abs(s.imag());
  const auto N = static_cast<std::size_t>(std::floor(at / (2.0 * kPi)));
  check_capacity(form, N);
  cplx value = dirichlet_sum(form, m, s, 1, N);
  const cplx chi_s = chi(ctx, s);
  const auto h = chi_log_deriv_ratios(ctx, m, s);
  for (int r = 0; r <= m; ++r) {
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    value += sign * binom(m, r) * chi_s * h[m - r] * dirichlet_sum(form, r, 1.0 - s, 1, N);
  }
  const double err = afe_sharp_constant(form.weight(), m) * std::pow(at, 0.5 - s.real() + kSharpEpsilon);
  return {value, Method::afe_sharp, err, 2 * N};
}

EvalResult afe_smoothed(const CuspForm& form, int m, cplx s, const SmoothingFunction& phi,
                        double y1, double y2, int l, bool with_corrections) {
  check_m(m);
  check_strip(s, "afe_smoothed");
  const double t = s.imag();
  const double at = std::abs(t);
  if (!(y1 > 0.0 && y2 > 0.0)) throw DomainError("afe_smoothed: y1 and y2 must be positive");
  const double constraint = (2.0 * kPi) * (2.0 * kPi) * y1 * y2 / (t * t);
  if (std::abs(constraint - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "afe_smoothed: (2 pi)^2 y1 y2 = " << constraint << " t^2, must equal t^2";
    throw DomainError(os.str());
  }
  if (phi.is_reflected()) throw DomainError("afe_smoothed: pass phi itself, not its reflection");
  const bool adaptive = with_corrections && l == kAdaptiveDepth;
  if (!with_corrections) {
    l = 0;
  } else if (!adaptive && l < min_correction_depth(form.weight())) {
    std::ostringstream os;
    os << "afe_smoothed: l = " << l << " below ceil((k+1)/2) = " << min_correction_depth(form.weight());
    throw DomainError(os.str());
  }
  // the adaptive depth needs two look-ahead terms
  const int jmax = adaptive ? kAdaptiveMaxDepth : l;
  if (jmax + 1 > phi.max_order()) {
    std::ostringstream os;
    os << "afe_smoothed: smoothing max_order " << phi.max_order() << " below " << jmax + 1;
    throw DomainError(os.str());
  }
  const ChiContext ctx(form);
  const SmoothingFunction phi0 = phi.reflect();
  const auto n1 = static_cast<std::size_t>(std::ceil(phi.transition().second * y1)) - 1;
  const auto n2 = static_cast<std::size_t>(std::ceil(phi0.transition().second * y2)) - 1;
  check_capacity(form, std::max(n1, n2));
  const auto lam = form.lambdas();
  const cplx chi_s = chi(ctx, s);
  const auto h = chi_log_deriv_ratios(ctx, m, s);

  GammaTable g1, g2;
  if (jmax > 0) {
    g1 = gamma_table(ctx, jmax, 0, s, 1.0 / at);
    g2 = gamma_table(ctx, jmax, m, 1.0 - s, 1.0 / at);
  }

  // corr[j]: both correction sums at depth j
  std::vector<cplx> corr(jmax + 1, 0.0);
  cplx main1 = 0.0;
  for (std::size_t n = 1; n <= n1; ++n) {
    const double rho = static_cast<double>(n) / y1;
    const auto d = phi.derivatives(jmax, rho);
    const cplx base = dirichlet_term(lam[n], m, s, n);
    main1 += base * d[0];
    double pw = 1.0;
    for (int j = 1; j <= jmax; ++j) {
      pw *= -rho;
      corr[j] += base * d[j] * pw * g1(j, 0);
    }
  }

  cplx main2 = 0.0;
  std::vector<cplx> base(m + 1);
  for (std::size_t n = 1; n <= n2; ++n) {
    const double rho = static_cast<double>(n) / y2;
    const auto d = phi0.derivatives(jmax, rho);
    for (int r = 0; r <= m; ++r) base[r] = dirichlet_term(lam[n], r, 1.0 - s, n);
    for (int r = 0; r <= m; ++r) {
      const cplx coef = ((r % 2 == 0) ? 1.0 : -1.0) * binom(m, r) * chi_s * base[r];
      main2 += coef * h[m - r] * d[0];
      double pw = 1.0;
      for (int j = 1; j <= jmax; ++j) {
        pw *= -rho;
        corr[j] += coef * d[j] * pw * g2(j, m - r);
      }
    }
  }

  double err = 0.0;
  if (adaptive) {
    // truncate the asymptotic j-series before its two smallest consecutive terms
    int best = 1;
    double best_tail = std::abs(corr[2]) + std::abs(corr[3]);
    for (int j = 2; j + 2 <= jmax; ++j) {
      const double tail = std::abs(corr[j + 1]) + std::abs(corr[j + 2]);
      if (tail < best_tail) {
        best = j;
        best_tail = tail;
      }
    }
    l = best;
    err = 2.0 * best_tail;
  } else {
    // error envelope with unit constants
    const double sigma = s.real();
    const double ly1 = std::max(1.0, std::log(y1));
    const double ly2 = std::max(1.0, std::log(y2));
    const double lt = std::max(1.0, std::log(at));
    double mixed = 0.0;
    for (int r = 0; r <= m; ++r) mixed += ipow(ly2, r) * ipow(lt, m - r);
    err = std::pow(y1, 1.0 - sigma) * ipow(ly1, m) * std::pow(at, -0.5 * l) * phi_norm(phi, l + 1) +
          std::pow(y2, sigma) * mixed * std::pow(at, 1.0 - 2.0 * sigma - 0.5 * l) *
              phi_norm(phi0, l + 1);
  }
  cplx value = main1 + main2;
  for (int j = 1; j <= l; ++j) value += corr[j];
  if (jmax > 0) err += (g1.err_estimate + g2.err_estimate) * static_cast<double>(n1 + n2);
  return {value, Method::afe_smoothed, err, n1 + n2};
}

EvalResult afe_smoothed(const CuspForm& form, int m, cplx s, const SmoothingFunction& phi, int l,
                        bool with_corrections) {
  const double y = std::abs(s.imag()) / (2.0 * kPi);
  return afe_smoothed(form, m, s, phi, y, y, l, with_corrections);
}

double functional_eq_residual(const CuspForm& form, int m, cplx s) {
  check_m(m);
  const ChiContext ctx(form);
  const auto lhs = oracle_derivatives(form, m, s);
  const auto refl = oracle_derivatives(form, m, 1.0 - s);
  const cplx chi_s = chi(ctx, s);
  const auto h = chi_log_deriv_ratios(ctx, m, s);
  cplx rhs = 0.0;
  for (int r = 0; r <= m; ++r) {
    const double sign = (r % 2 == 0) ? 1.0 : -1.0;
    rhs += binom(m, r) * sign * chi_s * h[m - r] * refl[r].value;
  }
  return std::abs(lhs[m].value - rhs);
}

Method select_method(cplx s) {
  if (s.real() >= kDirichletSigmaMin) return Method::dirichlet;
  if (std::abs(s.imag()) <= kOracleTCap) return Method::oracle;
  if (s.real() >= 0.0 && s.real() <= 1.0) return Method::afe_smoothed;
  std::ostringstream os;
  os << "no applicable evaluation method at s = " << s;
  throw DomainError(os.str());
}

EvalResult eval(const EvalRequest& req) {
  if (req.form == nullptr) throw DomainError("eval: request has no form");
  check_m(req.m);
  const CuspForm& form = *req.form;
  Method method = req.method == Method::automatic ? select_method(req.s) : req.method;
  switch (method) {
    case Method::dirichlet:
      return dirichlet_eval(form, req.m, req.s, req.tol);
    case Method::oracle:
      if (req.m == 0) return oracle_eval(form, req.s);
      return oracle_derivative(form, req.m, req.s);
    case Method::afe_sharp:
      return afe_sharp(form, req.m, req.s);
    case Method::afe_smoothed: {
      const int l = req.l != 0 ? req.l : kAdaptiveDepth;
      const int order = l == kAdaptiveDepth ? kAdaptiveMaxDepth + 1 : l + 1;
      const SmoothingFunction phi = req.smoothing ? *req.smoothing : make_phi(std::max(12, order));
      const double at = std::abs(req.s.imag());
      const double prod = at * at / (4.0 * kPi * kPi);
      double y1, y2;
      if (req.y1 && req.y2) {
        y1 = *req.y1;
        y2 = *req.y2;
      } else if (req.y1) {
        y1 = *req.y1;
        y2 = prod / y1;
      } else if (req.y2) {
        y2 = *req.y2;
        y1 = prod / y2;
      } else {
        y1 = y2 = at / (2.0 * kPi);
      }
      return afe_smoothed(form, req.m, req.s, phi, y1, y2, l, req.with_corrections);
    }
    case Method::automatic:
      break;
  }
  throw DomainError("eval: no applicable method");
}

}  // namespace cuspl
