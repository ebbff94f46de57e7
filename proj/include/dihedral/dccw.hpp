#pragma once

// The dihedralized catenoidal Costa-Wohlgemuth family: branch points
// {±1, ±a, ±c} with double zeros at ±b, period residual over gamma_{1,a} and
// gamma_{a,c}, residue-form alpha = 0 limit, and catenoidal growth rates.

#include <array>
#include <cmath>
#include <stdexcept>

#include "dihedral/weierstrass.hpp"

namespace dihedral::dccw {

using Vec2 = std::array<double, 2>;

struct Params {
  double a = 1.85;
  double b = 5.83;
  double c = 18.3;
  double alpha = 0.0;

  void validate() const {
    if (!(1.0 < a && a < b && b < c))
      throw std::invalid_argument("dccw::Params: need 1 < a < b < c");
    if (!(alpha >= 0.0))
      throw std::invalid_argument("dccw::Params: alpha >= 0");
  }
  static Params constrained(double a, double b, double alpha) {
    return {a, b, b * b / a, alpha};
  }
};

// exact root of the alpha = 0 period problem with c = b^2/a
inline const double kRootA =
    -3.0 * std::sqrt(2.0) + 3.0 * std::sqrt(3.0) + 2.0 * std::sqrt(6.0) - 4.0;
inline const double kRootB = 2.0 * std::sqrt(2.0) + 3.0;
inline const double kRootC = kRootB * kRootB / kRootA;
// determinant of the alpha = 0 Jacobian at the root (paper prints 6 digits)
inline constexpr double kRootJacobianDet = 1.5146672118763663e-4;

inline HalfPlaneForm phi1(const Params& p) {
  const double al = p.alpha;
  return HalfPlaneForm({{-p.c, al - 1.0},
                        {-p.b, 2.0},
                        {-p.a, -al - 1.0},
                        {-1.0, al - 1.0},
                        {1.0, 1.0 - al},
                        {p.a, al - 1.0},
                        {p.c, -al - 1.0}},
                       -1.0, 1.0);
}

inline HalfPlaneForm phi2(const Params& p) {
  const double al = p.alpha;
  return HalfPlaneForm({{-p.c, -al - 1.0},
                        {-p.a, al - 1.0},
                        {-1.0, 1.0 - al},
                        {1.0, al - 1.0},
                        {p.a, -al - 1.0},
                        {p.b, 2.0},
                        {p.c, al - 1.0}},
                       -1.0, 1.0);
}

inline HalfPlaneWeierstrass weierstrass_data(const Params& p) {
  p.validate();
  // rho = 1: the horizontal-plane symmetry sigma*G = conj(1/G) holds
  HalfPlaneForm dh({{p.b, 1.0},
                    {-p.b, 1.0},
                    {p.a, -1.0},
                    {-p.a, -1.0},
                    {p.c, -1.0},
                    {-p.c, -1.0}},
                   -1.0, 1.0);
  return {phi1(p), phi2(p), dh, 1.0};
}

struct Contours {
  double p1a, s1a, pac, sac;

  static Contours standard(double a, double c) {
    return {0.0, 0.5 * (a + c), 0.5 * (1.0 + a), c + 0.5 * (c - a)};
  }
  static Contours alternate(double a, double c) {
    return {-0.5, a + 0.75 * (c - a), 1.0 + 0.75 * (a - 1.0),
            c + 0.75 * (c - a)};
  }
};

struct ResidualDetail {
  cplx d1, d2;      // contour value of Int G dh - conj Int (1/G) dh
  Vec2 reduced;     // -Im(d1)/(2 pi), -Im(e^{-i alpha pi} d2)/(2 pi)
  Vec2 orthogonal;  // in-line components; identically ~0
};

namespace detail {

inline cplx circle(const HalfPlaneForm& f, double pass, double start,
                   quad::Tolerance tol) {
  const cplx center(0.5 * (pass + start), 0.0);
  const double radius = 0.5 * (start - pass);
  auto g = [&](double th) { return f.eval_on_circle(center, radius, th); };
  auto r = quad::integrate_arc(g, center, radius, 0.0, 2.0 * kPi, tol);
  return quad::require(r, "dccw circle integral");
}

}  // namespace detail

// Full 3-parameter residual. Normalized so that the alpha = 0 values equal
// the residue-form brackets of residual_limit: the gamma_{1,a} pair of edges
// lies in planes parallel to the x-axis (gap along i R), the gamma_{a,c}
// pair in planes at angle alpha pi (gap along i e^{i alpha pi} R).
inline ResidualDetail residual_detail(const Params& p,
                                      quad::Tolerance tol = {},
                                      const Contours* contours = nullptr) {
  p.validate();
  const Contours c = contours ? *contours : Contours::standard(p.a, p.c);
  const HalfPlaneForm f1 = phi1(p);
  const HalfPlaneForm f2 = phi2(p);
  const cplx i1_1a = detail::circle(f1, c.p1a, c.s1a, tol);
  const cplx i1_ac = detail::circle(f1, c.pac, c.sac, tol);
  const cplx i2_1a = detail::circle(f2, c.p1a, c.s1a, tol);
  const cplx i2_ac = detail::circle(f2, c.pac, c.sac, tol);
  ResidualDetail rd;
  rd.d1 = i1_1a - std::conj(i2_1a);
  rd.d2 = i1_ac - std::conj(i2_ac);
  const cplx ph = std::exp(cplx(0.0, p.alpha * kPi));
  const double inv2pi = 1.0 / (2.0 * kPi);
  rd.reduced = {-rd.d1.imag() * inv2pi, -(rd.d2 / ph).imag() * inv2pi};
  rd.orthogonal = {rd.d1.real() * inv2pi, (rd.d2 / ph).real() * inv2pi};
  return rd;
}

inline Vec2 residual(const Params& p, quad::Tolerance tol = {},
                     const Contours* contours = nullptr) {
  return residual_detail(p, tol, contours).reduced;
}

// c = b^2/a eliminated (equal growth rates).
inline Vec2 residual_constrained(double a, double b, double alpha,
                                 quad::Tolerance tol = {}) {
  return residual(Params::constrained(a, b, alpha), tol);
}

// alpha = 0 residue-form brackets (the paper's displayed expansions).
inline Vec2 residual_limit(double a, double b, double c) {
  const double r1 =
      (a + b) * (a + b) * (1.0 - a) / ((a + 1.0) * (c * c - a * a) * 2.0 * a) +
      2.0 * (b - 1.0) * (b - 1.0) / ((c * c - 1.0) * (a * a - 1.0)) +
      (b - a) * (b - a) * (a + 1.0) / ((1.0 - a) * (c * c - a * a) * 2.0 * a);
  const double r2 =
      (a + b) * (a + b) * (1.0 - a) / ((a + 1.0) * (c * c - a * a) * 2.0 * a) +
      (c + b) * (c + b) * (1.0 - c) / ((c + 1.0) * 2.0 * c * (a * a - c * c)) +
      (b - a) * (b - a) * (a + 1.0) / ((1.0 - a) * (c * c - a * a) * 2.0 * a) +
      (b - c) * (b - c) * (c + 1.0) / ((1.0 - c) * 2.0 * c * (a * a - c * c));
  return {r1, r2};
}

// Growth rate of the catenoidal end at puncture a or c.
enum class Puncture { a, c };

inline double growth_rate(const Params& p, Puncture which) {
  const double a = p.a, b = p.b, c = p.c;
  if (which == Puncture::a)
    return (b * b - a * a) / (2.0 * a * (a * a - c * c));
  return (c * c - b * b) / (2.0 * c * (a * a - c * c));
}

inline std::vector<double> end_punctures(const Params& p) {
  return {-p.c, -p.a, p.a, p.c};
}

inline EndClassification classify_end(const Params& p, double puncture) {
  const HalfPlaneForm f1 = phi1(p);
  const HalfPlaneForm f2 = phi2(p);
  if (p.alpha == 0.0)
    return classify_orders(f1.exponent_at(puncture),
                           f2.exponent_at(puncture), true);
  const double n = 1.0 / p.alpha;
  return classify_orders(n * (f1.exponent_at(puncture) + 1.0) - 1.0,
                         n * (f2.exponent_at(puncture) + 1.0) - 1.0, false);
}

}  // namespace dihedral::dccw
