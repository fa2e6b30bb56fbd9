// cuspl: command-line front end.
//
// Exit codes: 0 success, 1 computational failure, 2 usage or domain error.
// Every run prints one JSON object on stdout; numbers carry 17 significant digits.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cuspl/cache.hpp"
#include "cuspl/chifactor.hpp"
#include "cuspl/error.hpp"
#include "cuspl/format.hpp"
#include "cuspl/forms.hpp"
#include "cuspl/lseries.hpp"
#include "cuspl/meanvalue.hpp"
#include "cuspl/parallel.hpp"
#include "cuspl/smoothing.hpp"

namespace {

using json = nlohmann::ordered_json;
using cuspl::cplx;
using cuspl::format_double;

// Serializes with doubles at 17 significant digits.
void dump(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : json(nullptr).dump();
      break;
    }
    default:
      out += j.dump();
  }
}

std::string dump(const json& j) {
  std::string out;
  dump(j, out);
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

using Clock = std::chrono::steady_clock;

struct Run {
  std::string subcommand;
  json parameters = json::object();
  std::string cache_file;
  std::uint64_t cache_checksum = 0;
  Clock::time_point start = Clock::now();

  json manifest(const std::string& output) const {
    json m;
    m["subcommand"] = subcommand;
    m["parameters"] = parameters;
    m["version"] = CUSPL_VERSION;
    m["threads"] = cuspl::thread_count();
    if (!cache_file.empty()) {
      m["cache_file"] = cache_file;
      m["cache_checksum"] = hex64(cache_checksum);
    }
    m["wall_clock_s"] = std::chrono::duration<double>(Clock::now() - start).count();
    m["output_checksum"] = hex64(cuspl::fnv1a(output));
    return m;
  }
};

cuspl::CachedForm form_for(Run& run, int weight, std::size_t n_max) {
  auto cf = cuspl::load_or_build(weight, n_max);
  run.cache_file = cf.file.string();
  run.cache_checksum = cf.checksum;
  return cf;
}

json cplx_fields(cplx z) {
  json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

// ---- subcommands --------------------------------------------------------------

struct CoeffsArgs {
  int weight = 12;
  std::size_t n_max = 1000;
  std::string out;
};

void cmd_coeffs(const CoeffsArgs& a) {
  Run run{"coeffs"};
  run.parameters = {{"weight", a.weight}, {"n_max", a.n_max}, {"out", a.out}};
  const auto cf = form_for(run, a.weight, a.n_max);
  std::ostringstream csv;
  csv << "n,a,lambda\n";
  for (std::size_t n = 1; n <= a.n_max; ++n) {
    csv << n << ',' << cf.form.coefficient(n).get_str() << ',' << format_double(cf.form.lambda(n)) << '\n';
  }
  const std::string text = csv.str();
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw cuspl::DomainError("cannot open " + a.out + " for writing");
  f << text;
  if (!f.flush()) throw std::runtime_error("write to " + a.out + " failed");
  std::cout << dump(run.manifest(text)) << '\n';
}

struct EvalArgs {
  int weight = 12;
  int m = 0;
  double sigma = 0.5;
  double t = 0.0;
  std::string method = "auto";
  std::string smoothing = "standard";
  double alpha = 0.0;
  int l = 0;
  double y1 = 0.0;
  double y2 = 0.0;
  bool no_corrections = false;
  std::size_t n_max = cuspl::kDefaultNMax;
};

void cmd_eval(const EvalArgs& a) {
  Run run{"eval"};
  run.parameters = {{"weight", a.weight}, {"m", a.m},           {"sigma", a.sigma},
                    {"t", a.t},           {"method", a.method}, {"smoothing", a.smoothing},
                    {"alpha", a.alpha},   {"l", a.l},           {"y1", a.y1},
                    {"y2", a.y2},         {"corrections", !a.no_corrections}, {"n_max", a.n_max}};
  const auto cf = form_for(run, a.weight, a.n_max);
  cuspl::EvalRequest req;
  req.form = &cf.form;
  req.m = a.m;
  req.s = cplx(a.sigma, a.t);
  req.method = cuspl::method_from_string(a.method);
  req.l = a.l;
  req.with_corrections = !a.no_corrections;
  if (a.y1 > 0.0) req.y1 = a.y1;
  if (a.y2 > 0.0) req.y2 = a.y2;
  const int order = std::max({12, a.l + 1, cuspl::kAdaptiveMaxDepth + 1});
  if (a.smoothing == "psi") {
    req.smoothing = cuspl::make_psi_alpha(cuspl::make_phi(order), a.alpha, std::abs(a.t));
  } else if (a.smoothing == "standard") {
    req.smoothing = cuspl::make_phi(order);
  } else {
    throw cuspl::DomainError("--smoothing must be standard or psi");
  }
  const auto r = cuspl::eval(req);
  json out = cplx_fields(r.value);
  out["method"] = cuspl::to_string(r.method);
  out["err_estimate"] = r.err_estimate;
  out["terms_used"] = r.terms_used;
  const std::string payload = dump(out);
  out["manifest"] = run.manifest(payload);
  std::cout << dump(out) << '\n';
}

struct ChiArgs {
  int weight = 12;
  int r = 0;
  double sigma = 0.5;
  double t = 10.0;
};

void cmd_chi(const ChiArgs& a) {
  Run run{"chi"};
  run.parameters = {{"weight", a.weight}, {"r", a.r}, {"sigma", a.sigma}, {"t", a.t}};
  const cuspl::ChiContext ctx(a.weight);
  const cplx s(a.sigma, a.t);
  const cplx v = cuspl::chi_derivative(ctx, a.r, s);
  json out = cplx_fields(v);
  out["modulus"] = std::abs(v);
  const cplx ratio = cuspl::chi_log_deriv_ratio(ctx, a.r, s);
  out["ratio_re"] = ratio.real();
  out["ratio_im"] = ratio.imag();
  const std::string payload = dump(out);
  out["manifest"] = run.manifest(payload);
  std::cout << dump(out) << '\n';
}

// Self-checks of the smoothing module; returns false when any fails.
bool cmd_smoothing_test() {
  Run run{"smoothing-test"};
  const auto phi = cuspl::make_phi(12);
  const auto phi0 = phi.reflect();
  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, double value, double tol) {
    const bool pass = value <= tol;
    all = all && pass;
    checks.push_back({{"name", name}, {"value", value}, {"tol", tol}, {"pass", pass}});
  };
  record("K_phi(0) = 1 by convention", std::abs(cuspl::k_phi(phi, 0.0, 1) - 1.0), 0.0);
  record("K_phi(w) -> 1 as w -> 0 (l = 1)", std::abs(cuspl::k_phi(phi, 1e-9, 1) - 1.0), 1e-8);
  const std::vector<cplx> ws = {{0.5, 0.0}, {1.0, 1.0}, {-0.5, 2.0}, {2.0, -3.0}, {0.25, 10.0}};
  double refl = 0.0, reps = 0.0;
  for (const cplx w : ws) {
    refl = std::max(refl, std::abs(cuspl::k_phi(phi, w, 1) - cuspl::k_phi(phi0, -w, 1)));
    reps = std::max(reps, std::abs(cuspl::k_phi(phi, w, 1) - cuspl::k_phi(phi, w, 3)));
  }
  record("K_phi(w) = K_phi0(-w)", refl, 1e-8);
  record("l = 1 and l = 3 representations agree", reps, 1e-9);
  double flat = 0.0;
  for (double rho : {0.0, 0.25, 0.5}) flat = std::max(flat, std::abs(phi.value(rho) - 1.0));
  for (double rho : {2.0, 3.0, 10.0}) flat = std::max(flat, std::abs(phi.value(rho)));
  record("phi = 1 on [0, 1/2] and 0 on [2, inf)", flat, 0.0);
  double refl_id = 0.0;
  for (double rho : {0.6, 0.9, 1.3, 1.7}) {
    refl_id = std::max(refl_id, std::abs(phi0.value(rho) - (1.0 - phi.value(1.0 / rho))));
  }
  record("phi_0(rho) = 1 - phi(1/rho)", refl_id, 1e-15);
  json out;
  out["checks"] = checks;
  out["pass"] = all;
  const std::string payload = dump(out);
  out["manifest"] = run.manifest(payload);
  std::cout << dump(out) << '\n';
  return all;
}

struct RankinArgs {
  int weight = 12;
  std::size_t x_max = 1000000;
};

void cmd_rankin(const RankinArgs& a) {
  Run run{"rankin"};
  run.parameters = {{"weight", a.weight}, {"x_max", a.x_max}};
  const auto cf = form_for(run, a.weight, a.x_max);
  const auto est = cuspl::rankin_constant(cf.form, a.x_max);
  json table = json::array();
  for (std::size_t i = 0; i < est.x_grid.size(); ++i) {
    table.push_back({{"x", est.x_grid[i]},
                     {"slope", est.partial_slopes[i]},
                     {"deviation", std::abs(est.partial_slopes[i] - est.c_f) / est.c_f}});
  }
  json out;
  out["c_f"] = est.c_f;
  out["fluctuation"] = est.fluctuation;
  out["table"] = table;
  const std::string payload = dump(out);
  out["manifest"] = run.manifest(payload);
  std::cout << dump(out) << '\n';
}

struct MeanvalueArgs {
  int weight = 12;
  int m = 0;
  double sigma = 0.5;
  std::string T_grid = "250,500,1000";
  std::string method = "auto";
  std::string out = "moments.csv";
};

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw cuspl::DomainError("--T-grid: cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw cuspl::DomainError("--T-grid is empty");
  return out;
}

void cmd_meanvalue(const MeanvalueArgs& a) {
  Run run{"meanvalue"};
  run.parameters = {{"weight", a.weight}, {"m", a.m},           {"sigma", a.sigma},
                    {"T_grid", a.T_grid}, {"method", a.method}, {"out", a.out}};
  const auto grid = parse_grid(a.T_grid);
  for (double T : grid) {
    if (T > cuspl::kMomentTMax) {
      std::ostringstream os;
      os << "T = " << T << " exceeds the desk-scale cap " << cuspl::kMomentTMax
         << "; the quadrature cost grows like T^2";
      throw cuspl::DomainError(os.str());
    }
  }
  cuspl::QuadratureSpec quad;
  quad.method = cuspl::method_from_string(a.method);
  const auto cf = form_for(run, a.weight, cuspl::kDefaultNMax);
  const auto rep = cuspl::moment_report(cf.form, a.m, a.sigma, grid, quad);
  std::ostringstream csv;
  cuspl::write_moment_csv(rep, csv);
  const std::string text = csv.str();
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw cuspl::DomainError("cannot open " + a.out + " for writing");
  f << text;
  if (!f.flush()) throw std::runtime_error("write to " + a.out + " failed");

  json meta;
  meta["form"] = "weight " + std::to_string(rep.weight) + " level 1 eigenform";
  meta["m"] = rep.m;
  meta["sigma"] = rep.sigma;
  meta["prediction"] = rep.prediction_kind;
  meta["c_f"] = rep.c_f;
  if (rep.sigma > 0.5) meta["tail_sum"] = rep.tail_sum;
  meta["initial_piece"] = rep.initial_piece;
  json q;
  q["panel_width"] = rep.panel_width;
  q["nodes_per_panel"] = rep.nodes_per_panel;
  q["panels"] = rep.panels;
  q["refinement_disagreement"] = rep.refinement_disagreement;
  json counts = json::object();
  for (auto m : {cuspl::Method::dirichlet, cuspl::Method::oracle, cuspl::Method::afe_sharp,
                 cuspl::Method::afe_smoothed}) {
    const auto c = rep.method_counts[static_cast<std::size_t>(m)];
    if (c) counts[cuspl::to_string(m)] = c;
  }
  q["panel_methods"] = counts;
  meta["quadrature"] = q;
  meta["manifest"] = run.manifest(text);
  const std::string meta_text = dump(meta);
  std::ofstream mf(a.out + ".json", std::ios::binary);
  if (!mf) throw cuspl::DomainError("cannot open " + a.out + ".json for writing");
  mf << meta_text << '\n';
  std::cout << meta_text << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuspl: L-functions of level-one cusp forms and their derivatives"};
  app.set_version_flag("--version", CUSPL_VERSION);
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: machine parallelism)")->capture_default_str();

  CoeffsArgs ca;
  auto* coeffs = app.add_subcommand("coeffs", "Write n, a(n), lambda(n) as CSV");
  coeffs->add_option("--weight", ca.weight, "Weight: 12, 16, 18, 20, 22 or 26")->capture_default_str();
  coeffs->add_option("--n-max", ca.n_max, "Largest n")->capture_default_str()->check(CLI::PositiveNumber);
  coeffs->add_option("--out", ca.out, "Output CSV path")->required();

  EvalArgs ea;
  auto* ev = app.add_subcommand("eval", "Evaluate L^(m)(sigma + i t)");
  ev->add_option("--weight", ea.weight, "Weight")->capture_default_str();
  ev->add_option("--m", ea.m, "Derivative order, 0..4")->capture_default_str();
  ev->add_option("--sigma", ea.sigma, "Real part")->capture_default_str();
  ev->add_option("--t", ea.t, "Imaginary part")->capture_default_str();
  ev->add_option("--method", ea.method, "auto, dirichlet, oracle, afe_sharp or afe_smoothed")
      ->capture_default_str();
  ev->add_option("--smoothing", ea.smoothing, "standard or psi")->capture_default_str();
  ev->add_option("--alpha", ea.alpha, "psi_alpha compression exponent in [0, 1/2]")->capture_default_str();
  ev->add_option("--l", ea.l, "Correction depth (0: adaptive)")->capture_default_str();
  ev->add_option("--y1", ea.y1, "First cutoff length (0: |t|/2pi or from --y2)");
  ev->add_option("--y2", ea.y2, "Second cutoff length (0: |t|/2pi or from --y1)");
  ev->add_flag("--no-corrections", ea.no_corrections, "Drop the gamma_j correction sums");
  ev->add_option("--n-max", ea.n_max, "Coefficient table size")->capture_default_str();

  ChiArgs xa;
  auto* chi = app.add_subcommand("chi", "Evaluate chi^(r)(sigma + i t)");
  chi->add_option("--weight", xa.weight, "Weight")->capture_default_str();
  chi->add_option("--r", xa.r, "Derivative order, 0..8")->capture_default_str();
  chi->add_option("--sigma", xa.sigma, "Real part")->capture_default_str();
  chi->add_option("--t", xa.t, "Imaginary part")->capture_default_str();

  auto* smooth = app.add_subcommand("smoothing-test", "Self-checks of the smoothing functions");

  RankinArgs ra;
  auto* rankin = app.add_subcommand("rankin", "Estimate the Rankin constant C_f");
  rankin->add_option("--weight", ra.weight, "Weight")->capture_default_str();
  rankin->add_option("--x-max", ra.x_max, "Largest x")->capture_default_str();

  MeanvalueArgs ma;
  auto* mv = app.add_subcommand("meanvalue", "Second moments I(T) with predictions");
  mv->add_option("--weight", ma.weight, "Weight")->capture_default_str();
  mv->add_option("--m", ma.m, "Derivative order, 0..2")->capture_default_str();
  mv->add_option("--sigma", ma.sigma, "Real part in [1/2, 1]")->capture_default_str();
  mv->add_option("--T-grid", ma.T_grid, "Comma-separated ascending T values, each <= 2000")
      ->capture_default_str();
  mv->add_option("--method", ma.method, "auto or oracle")->capture_default_str();
  mv->add_option("--out", ma.out, "CSV path; metadata goes to <out>.json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cuspl::set_thread_count(threads);
    if (*coeffs) cmd_coeffs(ca);
    if (*ev) cmd_eval(ea);
    if (*chi) cmd_chi(xa);
    if (*smooth && !cmd_smoothing_test()) return 1;
    if (*rankin) cmd_rankin(ra);
    if (*mv) cmd_meanvalue(ma);
  } catch (const cuspl::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
