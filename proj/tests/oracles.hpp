#pragma once

// Test-side oracles, kept independent of the library's integration paths:
// dense trapezoid sums, rational residue arithmetic for the alpha = 0 forms,
// and finite differences.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// Trapezoid rule on [a, b] with N panels (use on smooth integrands only).
template <typename F>
cplx trapezoid(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  cplx s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

// Periodic trapezoid around the full circle |z - c| = r (spectrally
// accurate for integrands analytic in a neighborhood of the circle).
template <typename F>
cplx circle_trapezoid(F&& f, cplx c, double r, int n) {
  cplx s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * M_PI * i / n;
    const cplx z = c + r * std::exp(cplx(0.0, th));
    s += f(z) * cplx(0.0, 1.0) * r * std::exp(cplx(0.0, th));
  }
  return s * (2.0 * M_PI / n);
}

// Residue of a rational function at a simple pole, via a small circle.
template <typename F>
cplx residue(F&& f, cplx pole, double eps = 1e-3, int n = 512) {
  return circle_trapezoid(f, pole, eps, n) / cplx(0.0, 2.0 * M_PI);
}

// Central finite-difference Jacobian of a map R^2 -> R^2.
inline std::array<std::array<double, 2>, 2> fd_jacobian(
    const std::function<std::array<double, 2>(double, double)>& f, double x,
    double y, double h) {
  const auto fxp = f(x + h, y), fxm = f(x - h, y);
  const auto fyp = f(x, y + h), fym = f(x, y - h);
  return {{{(fxp[0] - fxm[0]) / (2 * h), (fyp[0] - fym[0]) / (2 * h)},
           {(fxp[1] - fxm[1]) / (2 * h), (fyp[1] - fym[1]) / (2 * h)}}};
}

inline double det2(const std::array<std::array<double, 2>, 2>& j) {
  return j[0][0] * j[1][1] - j[0][1] * j[1][0];
}

// DE alpha = 0 rational integrands.
inline cplx de_phi1_rational(cplx z, double a, double b) {
  return z * (a * a - z * z) / ((1.0 - z * z) * (b * b - z * z));
}
inline cplx de_phi2_rational(cplx z, double a, double b) {
  return (1.0 - z * z) * (b * b - z * z) / (z * (a * a - z * z));
}

// DCCW alpha = 0 rational integrands.
inline cplx dccw_gdh_rational(cplx z, double a, double b, double c) {
  return (z + b) * (z + b) * (1.0 - z) /
         ((z + 1.0) * (c * c - z * z) * (a * a - z * z));
}
inline cplx dccw_invgdh_rational(cplx z, double a, double b, double c) {
  return (b - z) * (b - z) * (z + 1.0) /
         ((1.0 - z) * (c * c - z * z) * (a * a - z * z));
}

}  // namespace oracle
