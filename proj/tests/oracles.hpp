#pragma once

// Test-side reference computations, independent of the library's numerics.

#include <cmath>
#include <functional>

namespace oracle {

inline double adaptive_simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return adaptive_simpson_step(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50);
}

/// Root of a monotone function on [a, b] by bisection.
inline double bisect(const std::function<double(double)>& f, double a, double b, int iterations = 200) {
  double fa = f(a);
  for (int i = 0; i < iterations; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// Central difference with Richardson extrapolation (two levels).
template <class F>
auto derivative(const F& f, double t, double h = 1e-3) {
  using R = decltype(f(t));
  auto d = [&](double s) -> R { return (f(t + s) - f(t - s)) / (2.0 * s); };
  const R d1 = d(h), d2 = d(h / 2), d3 = d(h / 4);
  const R r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d3 - d2) / 3.0;
  return R((16.0 * r2 - r1) / 15.0);
}

}  // namespace oracle
