#pragma once

// The dihedralized Chen-Gackstatter family: Schwarz-Christoffel integrands on
// the upper half plane with branch points {0, ±1, ±a, ±b}, period residual in
// ratio form, and its closed-form alpha = 0 limit.

#include <array>
#include <cmath>
#include <stdexcept>

#include "dihedral/weierstrass.hpp"

namespace dihedral::de {

using Vec2 = std::array<double, 2>;

struct Params {
  double a = 2.3;
  double b = 3.1;
  double alpha = 0.0;
  double rho = 1.0;

  void validate() const {
    if (!(1.0 < a && a < b))
      throw std::invalid_argument("de::Params: need 1 < a < b");
    if (!(alpha >= 0.0)) throw std::invalid_argument("de::Params: alpha >= 0");
    if (!(rho > 0.0)) throw std::invalid_argument("de::Params: rho > 0");
  }
};

// exact root of the alpha = 0 period problem: a = sqrt(3+sqrt(6)),
// b = sqrt(5+2 sqrt(6)) = sqrt(2)+sqrt(3)
inline const double kRootA = std::sqrt(3.0 + std::sqrt(6.0));
inline const double kRootB = std::sqrt(2.0) + std::sqrt(3.0);

inline HalfPlaneForm phi1(double a, double b, double alpha) {
  return HalfPlaneForm({{0.0, 1.0 - alpha},
                        {1.0, alpha - 1.0},
                        {-1.0, alpha - 1.0},
                        {a, 1.0 - alpha},
                        {-a, 1.0 - alpha},
                        {b, alpha - 1.0},
                        {-b, alpha - 1.0}},
                       0.0, 1.0);
}

inline HalfPlaneForm phi2(double a, double b, double alpha) {
  return HalfPlaneForm({{0.0, alpha - 1.0},
                        {1.0, 1.0 - alpha},
                        {-1.0, 1.0 - alpha},
                        {a, alpha - 1.0},
                        {-a, alpha - 1.0},
                        {b, 1.0 - alpha},
                        {-b, 1.0 - alpha}},
                       0.0, 1.0);
}

inline HalfPlaneWeierstrass weierstrass_data(const Params& p) {
  p.validate();
  HalfPlaneForm gdh = phi1(p.a, p.b, p.alpha);
  HalfPlaneForm inv_gdh = phi2(p.a, p.b, p.alpha);
  gdh.scale_by(p.rho);
  inv_gdh.scale_by(1.0 / p.rho);
  HalfPlaneForm dh({}, 0.0, 1.0);  // dh = dz
  return {gdh, inv_gdh, dh, p.rho};
}

// Circles gamma_{i,j}: start on the real axis right of j, counterclockwise,
// passing left of i. Two radius choices back the contour-independence tests.
struct Contours {
  // (pass, start) per contour: pass in (i_p, i), start in (j, j_s)
  double p01, s01, p1a, s1a, pab, sab;

  static Contours standard(double a, double b) {
    return {-0.5, 0.5 * (1.0 + a), 0.5, 0.5 * (a + b), 0.5 * (1.0 + a),
            b + 0.5 * (b - a)};
  }
  static Contours alternate(double a, double b) {
    return {-0.25, 1.0 + 0.75 * (a - 1.0), 0.25, a + 0.75 * (b - a),
            1.0 + 0.75 * (a - 1.0), b + 0.75 * (b - a)};
  }
};

struct LoopIntegrals {
  cplx i1_01, i1_1a, i1_ab;  // integrals of phi1 over the three circles
  cplx i2_01, i2_1a, i2_ab;  // integrals of phi2
};

namespace detail {

inline cplx circle(const HalfPlaneForm& f, double pass, double start,
                   quad::Tolerance tol) {
  const cplx center(0.5 * (pass + start), 0.0);
  const double radius = 0.5 * (start - pass);
  auto g = [&](double th) { return f.eval_on_circle(center, radius, th); };
  auto r = quad::integrate_arc(g, center, radius, 0.0, 2.0 * kPi, tol);
  return quad::require(r, "de circle integral");
}

}  // namespace detail

inline LoopIntegrals loop_integrals(double a, double b, double alpha,
                                    quad::Tolerance tol = {},
                                    const Contours* contours = nullptr) {
  Params{a, b, alpha}.validate();
  const Contours c = contours ? *contours : Contours::standard(a, b);
  const HalfPlaneForm f1 = phi1(a, b, alpha);
  const HalfPlaneForm f2 = phi2(a, b, alpha);
  LoopIntegrals li;
  li.i1_01 = detail::circle(f1, c.p01, c.s01, tol);
  li.i1_1a = detail::circle(f1, c.p1a, c.s1a, tol);
  li.i1_ab = detail::circle(f1, c.pab, c.sab, tol);
  li.i2_01 = detail::circle(f2, c.p01, c.s01, tol);
  li.i2_1a = detail::circle(f2, c.p1a, c.s1a, tol);
  li.i2_ab = detail::circle(f2, c.pab, c.sab, tol);
  return li;
}

struct ResidualDetail {
  cplx d1, d2;        // the two complex ratio differences
  Vec2 reduced;       // Re(e^{i a pi} d1), Re(e^{-i a pi} d2)
  Vec2 orthogonal;    // the complementary components; identically ~0
  LoopIntegrals loops;
};

// Ratio-form period residual. Under the positive-on-(0,1) branch the two
// differences lie on the lines e^{-i alpha pi} R and e^{+i alpha pi} R, so
// the genuine residual is the aligned real component.
inline ResidualDetail residual_detail(double a, double b, double alpha,
                                      quad::Tolerance tol = {},
                                      const Contours* contours = nullptr) {
  ResidualDetail rd;
  rd.loops = loop_integrals(a, b, alpha, tol, contours);
  const LoopIntegrals& li = rd.loops;
  rd.d1 = li.i1_01 / li.i1_1a - std::conj(li.i2_01) / std::conj(li.i2_1a);
  rd.d2 = li.i1_1a / li.i1_ab - std::conj(li.i2_1a) / std::conj(li.i2_ab);
  const cplx ph = std::exp(cplx(0.0, alpha * kPi));
  rd.reduced = {(ph * rd.d1).real(), (rd.d2 / ph).real()};
  rd.orthogonal = {(ph * rd.d1).imag(), (rd.d2 / ph).imag()};
  return rd;
}

inline Vec2 residual(double a, double b, double alpha,
                     quad::Tolerance tol = {},
                     const Contours* contours = nullptr) {
  return residual_detail(a, b, alpha, tol, contours).reduced;
}

// alpha = 0 closed form via the residue theorem.
inline Vec2 residual_limit(double a, double b) {
  return {1.0 + 2.0 * b * b / ((a * a - 1.0) * (a * a - b * b)),
          -1.0 + (a * a - 1.0) / (b * b - a * a)};
}

// The paper's closed-form Jacobian expression at alpha = 0. The signed
// determinant of d(residual_limit)/d(a,b) is the negative of this value.
inline double jacobian_limit(double a, double b) {
  const double a2 = a * a, b2 = b * b;
  return 8.0 * a * b * (b2 + 1.0) /
         ((a2 - 1.0) * (b2 - a2) * (b2 - a2) * (b2 - a2));
}

// Lopez-Ros scalar closing eq. (DEperiod) once the ratio conditions hold.
inline double solve_rho(const LoopIntegrals& li, double alpha) {
  return lopez_ros_rho(li.i1_01, li.i2_01, alpha);
}

// Punctures of the quotient domain: the 7 finite branch points (and infinity,
// handled separately by classify_end).
inline std::vector<double> finite_punctures(const Params& p) {
  return {-p.b, -p.a, -1.0, 0.0, 1.0, p.a, p.b};
}

// End classification at a finite branch point or at infinity. For
// alpha = 1/n the orders are those of the 2n-fold dihedral extension; for
// alpha = 0 they are the literal orders of the rational limit forms.
inline EndClassification classify_end(const Params& p, double puncture,
                                      bool at_infinity = false) {
  const HalfPlaneForm f1 = phi1(p.a, p.b, p.alpha);
  const HalfPlaneForm f2 = phi2(p.a, p.b, p.alpha);
  double o1, o2;
  if (p.alpha == 0.0) {
    o1 = at_infinity ? -f1.exponent_sum() - 2.0 : f1.exponent_at(puncture);
    o2 = at_infinity ? -f2.exponent_sum() - 2.0 : f2.exponent_at(puncture);
    return classify_orders(o1, o2, true);
  }
  const double n = 1.0 / p.alpha;
  if (at_infinity) {
    o1 = n * (-f1.exponent_sum() - 2.0 + 1.0) - 1.0;
    o2 = n * (-f2.exponent_sum() - 2.0 + 1.0) - 1.0;
  } else {
    o1 = n * (f1.exponent_at(puncture) + 1.0) - 1.0;
    o2 = n * (f2.exponent_at(puncture) + 1.0) - 1.0;
  }
  return classify_orders(o1, o2, false);
}

}  // namespace dihedral::de
