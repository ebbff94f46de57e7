#pragma once

// The dihedralized Karcher-Scherk family on rectangular tori: theta-product
// Weierstrass data on the quarter fundamental domain, the period residual
// over its upper and right boundary edges, and the bridge to the tilde
// parametrization at alpha = 0, tau = i.

#include <array>
#include <cmath>
#include <stdexcept>

#include "dihedral/dks_tilde.hpp"
#include "dihedral/forms.hpp"
#include "dihedral/weierstrass.hpp"

namespace dihedral::dks {

struct Params {
  double a = kTorusRoot;
  double c = kTorusRoot;
  TorusModulus tau{1.0};
  double alpha = 0.0;

  double b() const { return a * (1.0 - alpha) + 0.5 * alpha; }

  void validate() const {
    if (!(a > 0.0 && a < 0.5))
      throw std::invalid_argument("dks::Params: a must lie in (0, 1/2)");
    if (!(c > 0.0 && c < 0.5 * tau.im_tau))
      throw std::invalid_argument("dks::Params: c must lie in (0, Im tau/2)");
    if (!(alpha >= 0.0))
      throw std::invalid_argument("dks::Params: alpha >= 0");
    const double bb = b();
    if (!(bb > 0.0 && bb < 0.5))
      throw std::invalid_argument("dks::Params: derived b outside (0, 1/2)");
  }
};

// G dh, dh/G and dh as theta products. The half-period shifts tau/2 +- b
// carry integer powers; the (theta(z-(1/2+a))/theta(z-(1/2-a)))^(1-alpha)
// bracket is the one fractional factor, normalized positive on (0, 1/2-a).
inline TorusWeierstrass weierstrass_data(const Params& p) {
  p.validate();
  const cplx t2 = 0.5 * p.tau.tau();
  const double b = p.b();
  const cplx ic(0.0, p.c);

  TorusForm gdh(p.tau,
                {{t2 - b, 2.0}, {t2 - ic, -1.0}, {t2 + ic, -1.0}},
                cplx(0.0, -2.0 * kPi * b));
  gdh.set_bracket(0.5 + p.a, 0.5 - p.a, 1.0 - p.alpha, 0.0, 0.5 - p.a);

  TorusForm inv_gdh(p.tau,
                    {{t2 + b, 2.0}, {t2 - ic, -1.0}, {t2 + ic, -1.0}},
                    cplx(0.0, 2.0 * kPi * b));
  inv_gdh.set_bracket(0.5 + p.a, 0.5 - p.a, -(1.0 - p.alpha), 0.0,
                      0.5 - p.a);

  TorusForm dh(p.tau,
               {{t2 + b, 1.0}, {t2 - b, 1.0}, {t2 - ic, -1.0}, {t2 + ic, -1.0}},
               cplx(0.0, 0.0));

  return {gdh, inv_gdh, dh, p.tau};
}

struct ResidualDetail {
  cplx vertical;    // Int_{dGamma_u} dh (identically real)
  cplx horizontal;  // Int_{dGamma_r} G dh - conj Int_{dGamma_r} (1/G) dh
  Vec2 reduced;     // ( Re vertical, Im(e^{-i alpha pi} horizontal) )
};

// Period residual P(a, c, tau, alpha). The second condition is one real
// dimension: the gap normal to the angle-(alpha pi) vertical planes carrying
// f(dGamma_dr) and f(dGamma_u); the in-plane component of `horizontal` is an
// unconstrained offset and is not part of the residual.
inline ResidualDetail residual_detail(const Params& p,
                                      quad::Tolerance tol = {}) {
  p.validate();
  const TorusWeierstrass data = weierstrass_data(p);
  const cplx t2 = 0.5 * p.tau.tau();

  ResidualDetail rd;
  {
    // dGamma_u: z = x + tau/2, x from 0 to 1/2 (dh has no bracket)
    auto f = [&](double u) -> cplx {
      return data.dh.eval(cplx(0.5 * u, 0.0) + t2);
    };
    auto r = quad::detail::adapt<cplx>(f, 0.0, 1.0, tol, quad::kDefaultBudget);
    rd.vertical = 0.5 * quad::require(r, "dks vertical period");
  }
  {
    // bracket branch carried from the base to 1/2 through the interior,
    // clear of the punctures 1/2 - a and tau/2 - ic
    const WeierstrassData wd{data};
    FormEvaluator ev(wd);
    const cplx base = data.gdh.bracket_base();
    ev.advance(base + 0.5 * t2);
    ev.advance(cplx(0.5, 0.0) + 0.5 * t2);
    ev.advance(cplx(0.5, 0.0));
    // dGamma_r: z = 1/2 + y tau, y from 0 to 1/2
    CTriple I = ev.integrate_triple(cplx(0.5, 0.0), cplx(0.5, 0.0) + t2, tol);
    rd.horizontal = I.a - std::conj(I.b);
  }
  const cplx ph = std::exp(cplx(0.0, p.alpha * kPi));
  rd.reduced = {rd.vertical.real(), (rd.horizontal / ph).imag()};
  return rd;
}

inline Vec2 residual(const Params& p, quad::Tolerance tol = {}) {
  return residual_detail(p, tol).reduced;
}

inline Vec2 residual(double a, double c, double tau_im, double alpha,
                     quad::Tolerance tol = {}) {
  return residual(Params{a, c, TorusModulus(tau_im), alpha}, tol);
}

// Ends of the quotient torus: the dh poles at tau/2 -+ ic.
inline EndClassification classify_end(const Params& p, cplx puncture) {
  const TorusWeierstrass data = weierstrass_data(p);
  auto order_at = [&](const TorusForm& f) {
    double o = 0.0;
    for (const auto& tf : f.factors()) {
      cplx d = puncture - tf.shift;
      // reduce modulo the lattice
      d -= std::round(d.real());
      d -= std::round(d.imag() / p.tau.im_tau) * p.tau.tau();
      if (std::abs(d) < 1e-9) o += tf.power;
    }
    return o;
  };
  return classify_orders(order_at(data.gdh), order_at(data.inv_gdh),
                         p.alpha == 0.0);
}

}  // namespace dihedral::dks
