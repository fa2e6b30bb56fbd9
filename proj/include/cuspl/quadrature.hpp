#pragma once

#include <vector>

namespace cuspl::quad {

/// n-point Gauss-Legendre rule on [-1, 1]. Cached; safe to call concurrently.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

const GaussRule& gauss_legendre(int n);

/// Composite rule: `panels` equal panels of an n-point rule on [a, b].
template <typename F>
auto composite_gl(F&& f, double a, double b, int panels, int n) -> decltype(f(a)) {
  const GaussRule& g = gauss_legendre(n);
  const double h = (b - a) / panels;
  decltype(f(a)) total{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    decltype(f(a)) part{};
    for (int i = 0; i < n; ++i) part += g.w[i] * f(mid + 0.5 * h * g.x[i]);
    total += 0.5 * h * part;
  }
  return total;
}

}  // namespace cuspl::quad
