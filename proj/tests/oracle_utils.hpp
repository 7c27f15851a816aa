// Test-only numerical oracles, independent of the library's quadrature and
// interpolation paths: adaptive Simpson, plain Riemann sums, and finite
// differences. Used to freeze expected values before asserting them.
#ifndef STOCHSCL_TESTS_ORACLE_UTILS_HPP
#define STOCHSCL_TESTS_ORACLE_UTILS_HPP

#include <cmath>
#include <functional>

namespace test_oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson quadrature to absolute tolerance tol.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12) {
  if (a == b) return 0.0;
  return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 40);
}

/// Midpoint Riemann sum with n panels (brute force fine-grid oracle).
inline double riemann_midpoint(const std::function<double(double)>& f, double a, double b,
                               long n) {
  const double h = (b - a) / static_cast<double>(n);
  double acc = 0.0;
  for (long i = 0; i < n; ++i) {
    acc += f(a + (static_cast<double>(i) + 0.5) * h);
  }
  return acc * h;
}

inline double central_diff(const std::function<double(double)>& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace test_oracle

#endif
