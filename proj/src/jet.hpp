#pragma once

// Truncated Taylor series ("jets") in one real variable: c[i] = f^(i)(x0) / i!.

#include <array>
#include <cmath>

namespace cuspl::detail {

constexpr int kJetCap = 26;

struct Jet {
  int order = 0;
  std::array<double, kJetCap> c{};

  static Jet constant(double v, int order) {
    Jet j;
    j.order = order;
    j.c[0] = v;
    return j;
  }
  static Jet variable(double x0, int order) {
    Jet j = constant(x0, order);
    if (order >= 1) j.c[1] = 1.0;
    return j;
  }

  double value() const { return c[0]; }
  /// f^(k)(x0)
  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }
};

inline Jet operator+(Jet a, const Jet& b) {
  for (int i = 0; i <= a.order; ++i) a.c[i] += b.c[i];
  return a;
}
inline Jet operator-(Jet a, const Jet& b) {
  for (int i = 0; i <= a.order; ++i) a.c[i] -= b.c[i];
  return a;
}
inline Jet operator+(Jet a, double s) {
  a.c[0] += s;
  return a;
}
inline Jet operator-(double s, Jet a) {
  for (int i = 0; i <= a.order; ++i) a.c[i] = -a.c[i];
  a.c[0] += s;
  return a;
}
inline Jet operator-(Jet a, double s) {
  a.c[0] -= s;
  return a;
}
inline Jet operator*(Jet a, double s) {
  for (int i = 0; i <= a.order; ++i) a.c[i] *= s;
  return a;
}
inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.order = a.order;
  for (int n = 0; n <= a.order; ++n) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += a.c[k] * b.c[n - k];
    r.c[n] = s;
  }
  return r;
}

inline Jet reciprocal(const Jet& a) {
  Jet r;
  r.order = a.order;
  const double inv = 1.0 / a.c[0];
  r.c[0] = inv;
  for (int n = 1; n <= a.order; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += a.c[k] * r.c[n - k];
    r.c[n] = -inv * s;
  }
  return r;
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet exp(const Jet& a) {
  Jet r;
  r.order = a.order;
  r.c[0] = std::exp(a.c[0]);
  for (int n = 1; n <= a.order; ++n) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) s += k * a.c[k] * r.c[n - k];
    r.c[n] = s / n;
  }
  return r;
}

}  // namespace cuspl::detail
