// Serial reference against the OpenMP kernels: wall time and agreement.

#include <CLI11.hpp>

#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>

#include "cuspl/cache.hpp"
#include "cuspl/forms.hpp"
#include "cuspl/lseries.hpp"
#include "cuspl/meanvalue.hpp"
#include "cuspl/parallel.hpp"
#include "cuspl/smoothing.hpp"

using namespace cuspl;

namespace {

double best_of(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, double diff) {
  std::printf("%-24s serial %9.4fs  parallel %9.4fs  speedup %5.2f  |diff| %.3g\n", name, serial,
              parallel, serial / parallel, diff);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel benchmark"};
  int reps = 3;
  int threads = 0;
  std::size_t n = std::size_t{1} << 20;
  app.add_option("--reps", reps, "Repetitions per kernel (best time is kept)");
  app.add_option("--threads", threads, "Threads for the parallel runs (0: machine default)");
  app.add_option("--n", n, "Terms in the Dirichlet kernels");
  CLI11_PARSE(app, argc, argv);

  set_thread_count(threads);
  std::printf("threads %d\n", thread_count());
  const CuspForm form = load_or_build(12, n).form;

  {
    const cplx s(1.5, 100.0);
    cplx a, b;
    const double ts = best_of(reps, [&] { a = dirichlet_sum(form, 1, s, 1, n, Execution::serial); });
    const double tp = best_of(reps, [&] { b = dirichlet_sum(form, 1, s, 1, n, Execution::parallel); });
    report("dirichlet_sum", ts, tp, std::abs(a - b));
  }
  {
    const auto phi = make_phi(12);
    const cplx s(0.5, 2.0 * M_PI * 1e5);
    const double x = 0.45 * static_cast<double>(n);
    cplx a, b;
    const double ts = best_of(reps, [&] { a = smoothed_dirichlet_sum(form, 0, s, x, phi, Execution::serial); });
    const double tp = best_of(reps, [&] { b = smoothed_dirichlet_sum(form, 0, s, x, phi, Execution::parallel); });
    report("smoothed_dirichlet_sum", ts, tp, std::abs(a - b));
  }
  {
    const std::size_t build_n = 1 << 16;
    double da = 0.0;
    const int saved = thread_count();
    set_thread_count(1);
    CuspForm f1 = build_eigenform(26, 16);
    const double ts = best_of(reps, [&] { f1 = build_eigenform(26, build_n); });
    set_thread_count(saved);
    CuspForm f2 = f1;
    const double tp = best_of(reps, [&] { f2 = build_eigenform(26, build_n); });
    for (std::size_t k = 1; k <= build_n; ++k) da += f1.coefficient(k) == f2.coefficient(k) ? 0.0 : 1.0;
    report("build_eigenform (NTT)", ts, tp, da);
  }
  {
    QuadratureSpec quad;
    quad.method = Method::oracle;
    const CuspForm small = load_or_build(12, 4096).form;
    const int saved = thread_count();
    double a = 0.0, b = 0.0;
    set_thread_count(1);
    const double ts = best_of(1, [&] { a = second_moment(small, 0, 0.75, 60.0, quad).I_values[0]; });
    set_thread_count(saved);
    const double tp = best_of(1, [&] { b = second_moment(small, 0, 0.75, 60.0, quad).I_values[0]; });
    report("second_moment panels", ts, tp, std::abs(a - b));
  }
}
