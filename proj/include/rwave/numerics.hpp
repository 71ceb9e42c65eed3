#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace rwave {

// Trapezoid rule over the node range [j0, j1] of uniformly spaced samples.
inline double trapezoid_range(const std::vector<double>& f, double h, std::size_t j0,
                              std::size_t j1) {
  if (j1 >= f.size() || j0 > j1) throw std::invalid_argument("trapezoid_range: bad node range");
  if (j0 == j1) return 0.0;
  double s = 0.5 * (f[j0] + f[j1]);
  for (std::size_t j = j0 + 1; j < j1; ++j) s += f[j];
  return s * h;
}

inline double trapezoid(const std::vector<double>& f, double h) {
  return trapezoid_range(f, h, 0, f.size() - 1);
}

// Prefix trapezoid sums: out[k] = integral over [x_0, x_k].  out[0] = 0.
inline std::vector<double> cumtrapz(const std::vector<double>& f, double h) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t k = 1; k < f.size(); ++k)
    out[k] = out[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
  return out;
}

// First derivative of uniformly spaced samples: fourth-order centered stencil
// in the interior, second-order one-sided/centered stencils at the edges.
inline std::vector<double> deriv1(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw std::invalid_argument("deriv1: need at least 5 samples");
  std::vector<double> d(n);
  const double i12h = 1.0 / (12.0 * h);
  const double i2h = 1.0 / (2.0 * h);
  for (std::size_t j = 2; j + 2 < n; ++j)
    d[j] = (-f[j + 2] + 8.0 * f[j + 1] - 8.0 * f[j - 1] + f[j - 2]) * i12h;
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * i2h;
  d[1] = (f[2] - f[0]) * i2h;
  d[n - 2] = (f[n - 1] - f[n - 3]) * i2h;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * i2h;
  return d;
}

// Adaptive Simpson quadrature with an absolute tolerance.
namespace detail {
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 48) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace rwave
