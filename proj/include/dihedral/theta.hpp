#pragma once

// The odd Jacobi theta function on rectangular tori (purely imaginary tau),
// evaluated by the quasi-period-reduced series. Log-scaled evaluation is
// available for quasi-period factors that overflow a double.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "dihedral/quadrature.hpp"  // for cplx

namespace dihedral {

inline constexpr double kPi = 3.14159265358979323846;

struct TorusModulus {
  double im_tau;

  explicit TorusModulus(double im) : im_tau(im) {
    if (!(im > 0.0))
      throw std::invalid_argument("TorusModulus: Im(tau) must be > 0");
  }
  cplx tau() const { return cplx(0.0, im_tau); }
};

struct ThetaSeriesConfig {
  double tol = 1e-16;
  int max_terms = 64;
};

// value = exp(log_abs) * exp(i arg); represents quantities whose modulus can
// exceed the double range.
struct LogValue {
  double log_abs = 0.0;
  double arg = 0.0;
  cplx value() const { return std::exp(log_abs) * cplx(std::cos(arg), std::sin(arg)); }
};

namespace theta_detail {

// Series on the reduced argument |Im z| <= Im tau / 2:
//   theta(z) = 2 sum_{n>=0} e^{-pi t (n+1/2)^2} cos(2 pi (n+1/2)(z - 1/2))
// Pairing n with -1-n keeps theta exactly real on the real axis and exactly
// zero at z = 0.
inline cplx series(cplx z, double t, const ThetaSeriesConfig& cfg) {
  const double aiz = std::abs(z.imag());
  cplx sum(0.0, 0.0);
  double scale = 0.0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    const double h = n + 0.5;
    const double gauss = std::exp(-kPi * t * h * h);
    const cplx term = 2.0 * gauss * std::cos(2.0 * kPi * h * (z - 0.5));
    sum += term;
    scale = std::max(scale, std::abs(term));
    // tail bound: the next Gaussian factor times the cosh growth
    const double hn = n + 1.5;
    const double bound =
        2.0 * std::exp(-kPi * t * hn * hn + 2.0 * kPi * hn * aiz);
    if (bound < cfg.tol * std::max(scale, 1e-300)) break;
  }
  return sum;
}

}  // namespace theta_detail

// theta(z, tau) with the argument reduced into the fundamental strip and the
// exact quasi-period factor restored in log space:
//   theta(z + m + k tau) = (-1)^(m+k) e^{-i pi k^2 tau - 2 pi i k z0} theta(z0)
inline LogValue theta_log(cplx z, TorusModulus tau,
                          ThetaSeriesConfig cfg = {}) {
  const double t = tau.im_tau;
  const double k = std::round(z.imag() / t);
  const double m = std::round(z.real() - 0.0);
  const cplx z0 = z - cplx(m, 0.0) - k * tau.tau();

  LogValue out;
  if (z0 == cplx(0.0, 0.0)) {
    out.log_abs = -std::numeric_limits<double>::infinity();
    return out;
  }
  // prefactor: i pi (m+k)  - i pi tau k^2 - 2 pi i k z0; tau = i t
  out.log_abs = kPi * t * k * k + 2.0 * kPi * k * z0.imag();
  out.arg = kPi * (m + k) - 2.0 * kPi * k * z0.real();

  const cplx base = theta_detail::series(z0, t, cfg);
  const double ab = std::abs(base);
  if (ab == 0.0) {
    out.log_abs = -std::numeric_limits<double>::infinity();
    out.arg = 0.0;
    return out;
  }
  out.log_abs += std::log(ab);
  out.arg += std::arg(base);
  return out;
}

inline cplx theta(cplx z, TorusModulus tau, ThetaSeriesConfig cfg = {}) {
  const double t = tau.im_tau;
  const double k = std::round(z.imag() / t);
  const double m = std::round(z.real());
  const cplx z0 = z - cplx(m, 0.0) - k * tau.tau();
  if (z0 == cplx(0.0, 0.0)) return z0;  // exact zero at lattice points
  const cplx base = theta_detail::series(z0, t, cfg);
  if (base == cplx(0.0, 0.0)) return base;
  if (k == 0.0) {
    // theta(z + m) = (-1)^m theta(z): exact, keeps theta real on the axis
    return (std::llround(m) % 2 == 0) ? base : -base;
  }
  LogValue lv = theta_log(z, tau, cfg);
  return lv.value();
}

// theta'(0, tau), from the term-wise differentiated series; real and positive
// for purely imaginary tau.
inline cplx theta_prime_zero(TorusModulus tau, ThetaSeriesConfig cfg = {}) {
  const double t = tau.im_tau;
  double sum = 0.0;
  double sign = 1.0;
  for (int n = 0; n < cfg.max_terms; ++n) {
    const double h = n + 0.5;
    const double term = 4.0 * kPi * h * std::exp(-kPi * t * h * h) * sign;
    sum += term;
    if (std::abs(term) < cfg.tol * std::abs(sum) && n > 1) break;
    sign = -sign;
  }
  return cplx(sum, 0.0);
}

}  // namespace dihedral
