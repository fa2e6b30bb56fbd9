// Acceptance run: one PASS/FAIL line per criterion.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cuspl/cache.hpp"
#include "cuspl/chifactor.hpp"
#include "cuspl/forms.hpp"
#include "cuspl/lseries.hpp"
#include "cuspl/meanvalue.hpp"
#include "cuspl/smoothing.hpp"

using namespace cuspl;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Options {
  std::string cli;
  fs::path work = "acceptance-work";
};

const CuspForm& form(int weight, std::size_t n_max = kDefaultNMax) {
  static std::map<std::pair<int, std::size_t>, CuspForm> forms;
  auto it = forms.find({weight, n_max});
  if (it == forms.end()) it = forms.emplace(std::pair{weight, n_max}, load_or_build(weight, n_max).form).first;
  return it->second;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void coefficient_exactness(Outcome& o, const Options&) {
  const CuspForm delta = build_eigenform(12, 100);
  const auto hecke = verify_hecke(delta, 100);
  o.require(hecke.pass, "Hecke relations for tau(n), n <= 100: " + hecke.detail);
  o.detail << "tau(n) n<=100 Hecke checks " << hecke.checks << ";";
  for (int k : supported_weights()) {
    const auto del = verify_deligne(form(k, 10000), 10000);
    o.require(del.pass, "Deligne bound, weight " + std::to_string(k) + ": " + del.detail);
  }
  o.detail << " Deligne bound n<=1e4 for " << supported_weights().size() << " weights";
}

void chi_identities(Outcome& o, const Options&) {
  double worst = 0.0;
  for (int k : supported_weights()) {
    const ChiContext ctx(k);
    for (double sigma : {0.0, 0.25, 0.5, 0.75, 1.0})
      for (double t : {5.0, 50.0, 500.0}) {
        const cplx s(sigma, t);
        worst = std::max(worst, std::abs(chi(ctx, s) * chi(ctx, 1.0 - s) - 1.0));
      }
    for (double t : {10.0, 100.0, 1000.0})
      worst = std::max(worst, std::abs(std::abs(chi(ctx, cplx(0.5, t))) - 1.0));
  }
  o.detail << "max deviation " << worst;
  o.require(worst <= 1e-10, "deviation above 1e-10");
}

// r-th derivative of f at s: central differences, two Richardson levels
cplx central_derivative(const std::function<cplx(cplx)>& f, int r, cplx s, double h0) {
  auto stencil = [&](double h) -> cplx {
    switch (r) {
      case 1: return (f(s + h) - f(s - h)) / (2.0 * h);
      case 2: return (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
      default:
        return (f(s + 2.0 * h) - 2.0 * f(s + h) + 2.0 * f(s - h) - f(s - 2.0 * h)) /
               (2.0 * h * h * h);
    }
  };
  const cplx a = stencil(h0), b = stencil(h0 / 2), c = stencil(h0 / 4);
  const cplx ab = (4.0 * b - a) / 3.0, bc = (4.0 * c - b) / 3.0;
  return (16.0 * bc - ab) / 15.0;
}

void derivative_ratios(Outcome& o, const Options&) {
  const ChiContext ctx(12);
  const cplx s(0.5, 40.0);
  const auto f = [&](cplx z) { return chi(ctx, z); };
  double worst = 0.0;
  for (int r = 1; r <= 3; ++r) {
    const cplx fd = central_derivative(f, r, s, 0.02) / chi(ctx, s);
    worst = std::max(worst, rel(chi_log_deriv_ratio(ctx, r, s), fd));
  }
  o.detail << "finite-difference rel err " << worst;
  o.require(worst <= 1e-6, "finite-difference agreement");
  const double t = 1000.0;
  double worst_asym = 0.0;
  for (int r = 1; r <= 3; ++r) {
    const double lead = std::pow(-2.0 * std::log(t / (2.0 * M_PI)), r);
    worst_asym = std::max(worst_asym, rel(chi_log_deriv_ratio(ctx, r, cplx(0.5, t)), lead));
  }
  o.detail << "; asymptotic rel err at t=1000 " << worst_asym;
  o.require(worst_asym <= 1e-2, "asymptotic shape");
}

void gamma_identities(Outcome& o, const Options&) {
  const ChiContext ctx(12);
  double worst0 = 0.0, worst1 = 0.0;
  for (double t : {50.0, -120.0, 300.0}) {
    const cplx s(0.5, t);
    const double rho = 1.0 / std::abs(t);
    const auto tab = gamma_table(ctx, 1, 2, s, rho);
    for (int r = 0; r <= 2; ++r) {
      const cplx h1 = chi_log_deriv_ratio(ctx, r, 1.0 - s);
      const cplx h2 = chi_log_deriv_ratio(ctx, r, 2.0 - s);
      const double sgn = t > 0 ? 1.0 : -1.0;
      const cplx g1 = h1 - sgn * cplx(0.0, 1.0) * h2 / (rho * (s + ctx.kappa() - 1.0));
      worst0 = std::max(worst0, rel(tab(0, r), h1));
      worst1 = std::max(worst1, rel(tab(1, r), g1));
    }
  }
  o.detail << "j=0 rel err " << worst0 << ", j=1 rel err " << worst1;
  o.require(worst0 <= 1e-6, "j = 0 identity");
  o.require(worst1 <= 1e-6, "j = 1 two-term expression");
  const std::vector<double> ts{50.0, 200.0, 800.0};
  for (int j = 2; j <= 3; ++j) {
    std::vector<double> mags;
    for (double t : ts) mags.push_back(std::abs(gamma_j(ctx, j, 0, cplx(0.5, t), 1.0 / t)));
    const double slope = loglog_slope(ts, mags);
    o.detail << "; j=" << j << " decay exponent " << slope;
    o.require(slope <= -0.5 * j + 0.15, "gamma_" + std::to_string(j) + " decay");
  }
}

void k_phi_suite(Outcome& o, const Options&) {
  const auto phi = make_phi(12);
  const auto phi0 = phi.reflect();
  o.require(k_phi(phi, 0.0, 1) == cplx(1.0, 0.0), "K(0) convention");
  const double lim = std::abs(k_phi(phi, cplx(1e-9, 0.0), 1) - 1.0);
  o.require(lim <= 1e-8, "limit of the l-representation at 0");
  const std::vector<cplx> ws{{1.0, 1.0}, {0.5, 3.0}, {2.0, -1.0}, {-0.7, 0.4}, {0.1, 0.1}};
  double refl = 0.0;
  for (const cplx& w : ws) refl = std::max(refl, std::abs(k_phi(phi, w, 2) - k_phi(phi0, -w, 2)));
  o.require(refl <= 1e-8, "reflection");
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(-8.0, 8.0);
  double reps = 0.0;
  for (int i = 0; i < 10; ++i) {
    const cplx w(re(rng), im(rng));
    reps = std::max(reps, std::abs(k_phi(phi, w, 1) - k_phi(phi, w, 3)) / std::abs(k_phi(phi, w, 3)));
  }
  o.require(reps <= 1e-9, "l = 1 and l = 3 representations");
  o.detail << "limit " << lim << ", reflection " << refl << ", representation spread " << reps;
}

void oracle_consistency(Outcome& o, const Options&) {
  const auto& f = form(12);
  double worst = 0.0;
  for (cplx s : {cplx(3.0, 0.0), cplx(2.0, 7.0)}) {
    const auto orc = oracle_derivatives(f, 2, s);
    for (int m = 0; m <= 2; ++m) worst = std::max(worst, rel(orc[m].value, dirichlet_eval(f, m, s).value));
  }
  o.detail << "oracle vs Dirichlet rel err " << worst;
  o.require(worst <= 1e-8, "oracle vs Dirichlet");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> sig(0.0, 1.0), tt(10.0, 100.0);
  double fe = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplx s(sig(rng), tt(rng));
    fe = std::max(fe, functional_eq_residual(f, i % 3, s));
  }
  o.detail << "; functional-equation residual " << fe;
  o.require(fe <= 1e-6, "functional-equation residual");
}

cplx reference_value(const CuspForm& f, int m, cplx s) {
  return oracle_derivatives(f, m, s, 0.25, 32, 1e-8, kOracleHardCap)[m].value;
}

void sharp_error_shape(Outcome& o, const Options&) {
  const auto& f = form(12);
  const std::vector<double> ts{50.0, 100.0, 200.0, 400.0, 800.0};
  std::vector<double> errs;
  for (double t : ts) {
    const cplx s(1.0, t);
    errs.push_back(std::abs(afe_sharp(f, 0, s).value - reference_value(f, 0, s)));
  }
  const double slope = loglog_slope(ts, errs);
  o.detail << "sigma=1 slope " << slope;
  o.require(slope <= -0.4, "sigma = 1 decay");
  for (int m = 0; m <= 1; ++m) {
    std::vector<double> scaled;
    for (double t : ts) {
      const cplx s(0.5, t);
      const double err = std::abs(afe_sharp(f, m, s).value - reference_value(f, m, s));
      scaled.push_back(err / std::pow(std::log(t), m + 1));
    }
    // c fitted on the two smallest t; larger t must stay below it
    const double c = 2.0 * std::max(scaled[0], scaled[1]);
    const double peak = *std::max_element(scaled.begin() + 2, scaled.end());
    o.detail << "; sigma=1/2 m=" << m << " err/(log t)^" << m + 1 << " max " << peak << " vs c " << c;
    o.require(peak <= c, "sigma = 1/2 polylog bound, m = " + std::to_string(m));
  }
}

void smoothed_dominance(Outcome& o, const Options&) {
  const auto& f = form(12);
  const auto phi = make_phi(24);
  const int l0 = min_correction_depth(12);
  for (int m = 0; m <= 1; ++m) {
    const cplx s(0.5, 100.0);
    const cplx ref = reference_value(f, m, s);
    const double sharp = std::abs(afe_sharp(f, m, s).value - ref);
    std::vector<double> errs;
    for (int l = l0; l <= l0 + 4; ++l) errs.push_back(std::abs(afe_smoothed(f, m, s, phi, l).value - ref));
    int decreasing = 0;
    for (std::size_t i = 1; i < errs.size(); ++i) decreasing += errs[i] < errs[i - 1];
    o.detail << (m ? "; " : "") << "m=" << m << " sharp " << sharp << ", smoothed l=" << l0 << ".."
             << l0 + 4 << ":";
    for (double e : errs) o.detail << ' ' << e;
    o.detail << ", adaptive depth " << std::abs(afe_smoothed(f, m, s, phi, kAdaptiveDepth).value - ref);
    o.require(errs[0] < sharp, "smoothed below sharp at l = " + std::to_string(l0) + ", m = " + std::to_string(m));
    o.require(decreasing >= 3, "monotone decrease in l, m = " + std::to_string(m));
  }
}

void moment_sigma_three_quarters(Outcome& o, const Options&) {
  const auto& f = form(12);
  for (int m = 0; m <= 1; ++m) {
    const auto rep = moment_report(f, m, 0.75, {250.0, 500.0, 1000.0});
    auto scale = [&](double T) { return std::sqrt(T) * std::pow(std::log(T), 2 * m); };
    const double C = std::abs(rep.I_values[0] - rep.predictions[0]) / scale(250.0);
    o.detail << (m ? "; " : "") << "m=" << m << " C " << C << " normalised gaps";
    for (std::size_t i = 1; i < 3; ++i) {
      const double gap = std::abs(rep.I_values[i] - rep.predictions[i]) / scale(rep.T_grid[i]);
      o.detail << ' ' << gap;
      o.require(gap <= C, "m = " + std::to_string(m) + " at T = " + std::to_string(int(rep.T_grid[i])));
    }
  }
}

void moment_critical_line(Outcome& o, const Options&) {
  const auto& f = form(12);
  const double band[2][2] = {{0.5, 1.6}, {0.4, 1.8}};
  for (int m = 0; m <= 1; ++m) {
    const auto rep = moment_report(f, m, 0.5, {250.0, 1000.0});
    const double r250 = rep.ratios[0], r1000 = rep.ratios[1];
    o.detail << (m ? "; " : "") << "m=" << m << " ratios " << r250 << ", " << r1000;
    const std::string tag = "m = " + std::to_string(m);
    o.require(r250 >= band[m][0] && r250 <= band[m][1], tag + " band at T = 250");
    o.require(r1000 >= band[m][0] && r1000 <= band[m][1], tag + " band at T = 1000");
    o.require(std::abs(r1000 - 1.0) < std::abs(r250 - 1.0), tag + " convergence toward 1");
  }
}

void rankin_stability(Outcome& o, const Options&) {
  const auto& f = form(12);
  const auto a = rankin_constant(f, 100000);
  const auto b = rankin_constant(f, 1000000);
  const double drift = std::abs(a.c_f / b.c_f - 1.0);
  o.detail << "c_f(1e5) " << a.c_f << ", c_f(1e6) " << b.c_f << ", drift " << drift;
  o.require(drift <= 0.02, "2% agreement");
  o.require(std::all_of(b.partial_slopes.begin(), b.partial_slopes.end(), [](double v) { return v > 0; }),
            "positivity");
}

void prefactors(Outcome& o, const Options&) {
  const Fraction want[] = {{2, 1}, {8, 3}, {32, 5}};
  for (int m = 0; m <= 2; ++m) {
    const auto got = a_fm_prefactor(m);
    o.detail << (m ? ", " : "") << got.num << '/' << got.den;
    o.require(got == want[m], "m = " + std::to_string(m));
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism(Outcome& o, const Options& opt) {
  if (opt.cli.empty()) throw std::runtime_error("--cli not given");
  fs::create_directories(opt.work);
  std::vector<std::string> outputs;
  for (int threads : {1, 4, 1, 2}) {
    const fs::path out = opt.work / ("moment_" + std::to_string(outputs.size()) + ".csv");
    const std::string cmd = "\"" + opt.cli + "\" --threads " + std::to_string(threads) +
                            " meanvalue --weight 12 --m 1 --sigma 0.5 --T-grid 20,40,60 --out \"" +
                            out.string() + "\" > /dev/null";
    o.require(std::system(cmd.c_str()) == 0, "meanvalue run with " + std::to_string(threads) + " threads");
    outputs.push_back(slurp(out));
  }
  for (int run = 0; run < 2; ++run) {
    const fs::path out = opt.work / ("coeffs_" + std::to_string(run) + ".csv");
    const std::string cmd = "\"" + opt.cli + "\" coeffs --weight 18 --n-max 5000 --out \"" + out.string() +
                            "\" > /dev/null";
    o.require(std::system(cmd.c_str()) == 0, "coeffs run");
    outputs.push_back(slurp(out));
  }
  bool same = !outputs[0].empty();
  for (int i = 1; i < 4; ++i) same = same && outputs[i] == outputs[0];
  o.require(same, "meanvalue CSV identical across thread counts");
  o.require(!outputs[4].empty() && outputs[4] == outputs[5], "coeffs CSV identical");
  o.detail << "4 meanvalue runs (threads 1,4,1,2), 2 coeffs runs compared byte for byte";
}

struct Criterion {
  const char* name;
  void (*run)(Outcome&, const Options&);
};

const Criterion kCriteria[] = {
    {"coefficient exactness", coefficient_exactness},
    {"chi identities", chi_identities},
    {"derivative ratios", derivative_ratios},
    {"gamma_j identities", gamma_identities},
    {"K_phi suite", k_phi_suite},
    {"oracle consistency", oracle_consistency},
    {"sharp AFE error shape", sharp_error_shape},
    {"smoothed AFE dominance", smoothed_dominance},
    {"second moment sigma=3/4", moment_sigma_three_quarters},
    {"second moment sigma=1/2", moment_critical_line},
    {"Rankin stability", rankin_stability},
    {"A_fm prefactors", prefactors},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  Options opt;
  std::vector<int> only;
  app.add_option("--cli", opt.cli, "Path to the cuspl executable");
  app.add_option("--work", opt.work, "Scratch directory");
  app.add_option("--only", only, "Criterion numbers to run (default: all)");
  CLI11_PARSE(app, argc, argv);

  const int total = static_cast<int>(std::size(kCriteria));
  if (only.empty())
    for (int i = 1; i <= total; ++i) only.push_back(i);
  int failures = 0;
  for (int id : only) {
    if (id < 1 || id > total) {
      std::cerr << "no criterion " << id << '\n';
      return 2;
    }
    const auto& c = kCriteria[id - 1];
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o, opt);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("criterion %2d %-26s %s (%.1fs) %s\n", id, c.name, o.pass ? "PASS" : "FAIL", secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
