#pragma once

// The rotated/reparametrized alpha = 0 picture of the DKS family: the psi
// integrals on [1, inf), the Lopez-Ros scalar rho(x), the Jacobian factors
// f1/f2, the normalized Schwarz-Christoffel map T between the upper half
// plane and the quarter square, and the period map tildeP.

#include <array>
#include <cmath>
#include <stdexcept>

#include "dihedral/forms.hpp"
#include "dihedral/quadrature.hpp"

namespace dihedral::dks {

using Vec2 = std::array<double, 2>;

// psi_1(x,y) = Int_1^inf sqrt(t^2-1) / (sqrt(t) (t+x)(t-y)) dt
inline double psi1(double x, double y, quad::Tolerance tol = {}) {
  if (!(x > -1.0 && x < 1.0) || !(y > -1.0 && y < 1.0))
    throw std::invalid_argument("psi1: arguments must lie in (-1, 1)");
  auto f = [&](double t) -> cplx {
    return std::sqrt(t * t - 1.0) / (std::sqrt(t) * (t + x) * (t - y));
  };
  return quad::require(quad::integrate_halfline(f, 1.0, -1.5, tol, 0.5),
                       "psi1")
      .real();
}

// psi_2(x,y) = Int_1^inf sqrt(t) / (sqrt(t^2-1) (t+x)(t-y)) dt
inline double psi2(double x, double y, quad::Tolerance tol = {}) {
  if (!(x > -1.0 && x < 1.0) || !(y > -1.0 && y < 1.0))
    throw std::invalid_argument("psi2: arguments must lie in (-1, 1)");
  auto f = [&](double t) -> cplx {
    return std::sqrt(t) / (std::sqrt(t * t - 1.0) * (t + x) * (t - y));
  };
  return quad::require(quad::integrate_halfline(f, 1.0, -2.5, tol, -0.5),
                       "psi2")
      .real();
}

inline double rho_tilde(double x) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("rho_tilde: x must lie in (0, 1)");
  return std::sqrt(x) / std::sqrt(1.0 - x * x);
}

inline double drho_tilde(double x) {
  return (1.0 + x * x) / (2.0 * std::sqrt(x) * std::pow(1.0 - x * x, 1.5));
}

// Jacobian factors of det(D tildeP(x,x)) = -i/rho^3 f1 f2, normalized so
// that f1 > 0 and f2 < 0 on (0,1); the factorization only sees the product.
inline double f1(double at, quad::Tolerance tol = {}) {
  if (!(at > 0.0 && at < 1.0))
    throw std::invalid_argument("f1: argument must lie in (0, 1)");
  auto f = [&](double t) -> cplx {
    return std::sqrt(t) * (1.0 - t * at) /
           (std::sqrt(t * t - 1.0) * (t - at) * (t - at) * (t + at));
  };
  const double integral =
      quad::require(quad::integrate_halfline(f, 1.0, -2.5, tol, -0.5), "f1")
          .real();
  return 2.0 / (1.0 - at * at) * integral;
}

inline double f2(double at, quad::Tolerance tol = {}) {
  if (!(at > 0.0 && at < 1.0))
    throw std::invalid_argument("f2: argument must lie in (0, 1)");
  const double denom_c = 2.0 * std::sqrt(at) * std::pow(1.0 - at * at, 2.5);
  auto f = [&](double t) -> cplx {
    const double num = t * t * (at * at * at + at) +
                       t * (-3.0 * at * at * at * at - 2.0 * at * at + 1.0) +
                       at * (5.0 * at * at - 3.0);
    return num / (std::sqrt(t) * std::sqrt(t * t - 1.0) * denom_c * (t - at) *
                  (t - at));
  };
  return -quad::require(quad::integrate_halfline(f, 1.0, -1.5, tol, -0.5),
                        "f2")
              .real();
}

// ---------------------------------------------------------------------------
// T(z) = Int_0^z dw / sqrt(w (1-w^2))  /  (2 Int_0^1 ...): the normalized
// Schwarz-Christoffel map, upper half plane -> quarter square, sending
// -1, 0, 1, inf to i/2, 0, 1/2, (1+i)/2. Branch positive on (0, 1);
// globally T(-conj z) = i conj(T(z)).

namespace tmap_detail {

// (z-1)^{-1/2} (z+1)^{-1/2} with upper-half-plane args, times the prefactor
// i that makes the full integrand positive on (0, 1).
inline cplx rest(cplx w) {
  auto piece = [](cplx d) -> cplx {
    const double m = std::abs(d);
    const double a = HalfPlaneForm::arg_upper(d);
    return std::exp(cplx(-0.5 * std::log(m), -0.5 * a));
  };
  return cplx(0.0, 1.0) * piece(w - 1.0) * piece(w + 1.0);
}

// Int_0^1 dw/sqrt(w(1-w^2))
inline double normalization() {
  static const double K = [] {
    auto g = [](cplx u) -> cplx { return 1.0 / std::sqrt(1.0 + u.real()); };
    auto r = quad::integrate_segment(g, cplx(0.0), cplx(1.0), -0.5, -0.5,
                                     {1e-14, 1e-14});
    return quad::require(r, "T normalization").real();
  }();
  return K;
}

// Int_1^x dw / sqrt(w(w^2-1)) / (2K): vertical progress along the right
// edge; monotone in x, -> 1/2 as x -> inf.
inline double vertical(double x) {
  if (x <= 1.0) return 0.0;
  const double K = normalization();
  auto g = [&](cplx uc) -> cplx {
    const double w = 1.0 + (x - 1.0) * uc.real();
    return 1.0 / (std::sqrt(w) * std::sqrt(w + 1.0));
  };
  auto r = quad::integrate_segment(g, cplx(0.0), cplx(1.0), -0.5, 0.0,
                                   {1e-13, 1e-13});
  return std::sqrt(x - 1.0) * quad::require(r, "T vertical").real() /
         (2.0 * K);
}

template <typename F>
double bisect(F&& fn, double lo, double hi, double target, int iters = 200) {
  double flo = fn(lo) - target;
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid) - target;
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * (1.0 + std::abs(lo))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tmap_detail

// T restricted to the real segment [0, 1] (real-valued, monotone).
inline double T_real(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument("T_real: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 0.5;
  const double K = tmap_detail::normalization();
  // w = x u: Int_0^x = sqrt(x) Int_0^1 u^{-1/2}(1-xu)^{-1/2}(1+xu)^{-1/2} du
  auto g = [&](cplx uc) -> cplx {
    const double u = uc.real();
    return 1.0 / (std::sqrt(1.0 - x * u) * std::sqrt(1.0 + x * u));
  };
  auto r = quad::integrate_segment(g, cplx(0.0), cplx(1.0), -0.5, 0.0,
                                   {1e-13, 1e-13});
  return std::sqrt(x) * quad::require(r, "T_real").real() / (2.0 * K);
}

inline cplx T_map(cplx z) {
  if (z.imag() < -1e-12)
    throw std::invalid_argument("T_map: z must lie in the upper half plane");
  if (z.imag() <= 0.0) {
    const double x = z.real();
    if (x >= 0.0 && x <= 1.0) return cplx(T_real(x), 0.0);
    if (x >= -1.0 && x < 0.0) return cplx(0.0, T_real(-x));
    if (x > 1.0) return cplx(0.5, tmap_detail::vertical(x));
    return cplx(tmap_detail::vertical(-x), 0.5);  // x < -1
  }
  // interior: Int_0^z = sqrt(z) Int_0^1 u^{-1/2} rest(z u) du (UHP branch)
  auto g = [&](cplx uc) -> cplx { return tmap_detail::rest(z * uc.real()); };
  auto r = quad::integrate_segment(g, cplx(0.0), cplx(1.0), -0.5, 0.0,
                                   {1e-13, 1e-13});
  const cplx root_z = std::exp(
      0.5 * cplx(std::log(std::abs(z)), HalfPlaneForm::arg_upper(z)));
  return root_z * quad::require(r, "T_map") /
         (2.0 * tmap_detail::normalization());
}

inline cplx T_derivative(cplx z) {
  const cplx inv_root_z = std::exp(
      -0.5 * cplx(std::log(std::abs(z)), HalfPlaneForm::arg_upper(z)));
  return inv_root_z * tmap_detail::rest(z) /
         (2.0 * tmap_detail::normalization());
}

// Inverse of T on the closed quarter square. The corner (1+i)/2 corresponds
// to z = infinity and is rejected, as is any w outside the square.
inline cplx T_inverse(cplx w) {
  const double eps = 1e-9;
  const double x = w.real(), y = w.imag();
  if (x < -eps || x > 0.5 + eps || y < -eps || y > 0.5 + eps)
    throw std::invalid_argument("T_inverse: w outside the quarter square");
  if (std::abs(x - 0.5) < eps && std::abs(y - 0.5) < eps)
    throw std::invalid_argument("T_inverse: corner (1+i)/2 maps to infinity");

  auto solve_right_edge = [&](double target) -> double {
    // vertical(x) = target, x > 1
    double hi = 2.0;
    while (tmap_detail::vertical(hi) < target && hi < 1e12) hi *= 2.0;
    return tmap_detail::bisect(
        [](double t) { return tmap_detail::vertical(t); }, 1.0 + 1e-14, hi,
        target);
  };

  if (y < eps) {  // bottom edge: z in [0, 1]
    if (x < eps) return cplx(0.0, 0.0);
    return cplx(tmap_detail::bisect([](double t) { return T_real(t); }, 0.0,
                                    1.0, x),
                0.0);
  }
  if (x < eps) {  // left edge: z in [-1, 0]
    return cplx(-tmap_detail::bisect([](double t) { return T_real(t); }, 0.0,
                                     1.0, y),
                0.0);
  }
  if (x > 0.5 - eps) return cplx(solve_right_edge(y), 0.0);   // z > 1
  if (y > 0.5 - eps) return cplx(-solve_right_edge(x), 0.0);  // z < -1

  // interior: Newton with a straight homotopy in w from T(i)
  static const cplx w0 = T_map(cplx(0.0, 1.0));
  cplx z(0.0, 1.0);
  const int steps = 8;
  for (int k = 1; k <= steps; ++k) {
    const cplx wt = w0 + (w - w0) * (double(k) / steps);
    bool ok = false;
    for (int it = 0; it < 60; ++it) {
      const cplx err = T_map(z) - wt;
      if (std::abs(err) < 1e-13) {
        ok = true;
        break;
      }
      cplx dz = -err / T_derivative(z);
      int guard = 0;
      while ((z + dz).imag() <= 1e-14 && guard++ < 50) dz *= 0.5;
      z += dz;
    }
    if (!ok && std::abs(T_map(z) - wt) > 1e-10)
      throw std::runtime_error("T_inverse: Newton did not converge");
  }
  return z;
}

// ---------------------------------------------------------------------------
// tildeP: the alpha = 0, tau = i period map in the rotated parametrization,
//   tildeP(x,y) = ( rho(x) psi1(x,y) - psi2(x,y)/rho(x),
//                   i [rho(x) psi1(-x,-y) - psi2(-x,-y)/rho(x)] );
// first component real, second purely imaginary.
struct TildeP {
  cplx first;
  cplx second;
};

inline TildeP tilde_period(double x, double y, quad::Tolerance tol = {}) {
  if (!(x > 0.0 && x < 1.0) || !(y > 0.0 && y < 1.0))
    throw std::invalid_argument("tilde_period: pole configuration invalid");
  const double r = rho_tilde(x);
  const double c1 = r * psi1(x, y, tol) - psi2(x, y, tol) / r;
  const double c2 = r * psi1(-x, -y, tol) - psi2(-x, -y, tol) / r;
  return {cplx(c1, 0.0), cplx(0.0, c2)};
}

// real reduction used by the solver and the bisection oracle
inline Vec2 tilde_period_reduced(double x, double y, quad::Tolerance tol = {}) {
  const TildeP p = tilde_period(x, y, tol);
  return {p.first.real(), p.second.imag()};
}

// g(x) = rho(x)^2 psi1(x,x) - psi2(x,x): its unique zero on (0,1) is the
// genus-1 Karcher-Scherk root in the tilde parametrization.
inline double tilde_gap(double x, quad::Tolerance tol = {}) {
  const double r = rho_tilde(x);
  return r * r * psi1(x, x, tol) - psi2(x, x, tol);
}

inline double solve_tilde_root(quad::Tolerance tol = {}) {
  return tmap_detail::bisect([&](double x) { return tilde_gap(x, tol); },
                             0.05, 0.95, 0.0);
}

// Cached project constants: the tilde root (bisection on tilde_gap) and the
// torus root a0 = 1/2 - T(atilde0); both re-derived by the test suite.
inline constexpr double kTildeRoot = 0.55937026079922304;
inline constexpr double kTorusRoot = 0.20440613608846587;

}  // namespace dihedral::dks
