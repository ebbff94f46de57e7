#pragma once

// The verification suites behind `dihedral-forge verify`: closed-form roots,
// determinants and sign claims ("paper"), and the structural property checks
// ("properties"). Each check reports name, value, target and tolerance.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dihedral/dccw.hpp"
#include "dihedral/de.hpp"
#include "dihedral/dks.hpp"
#include "dihedral/dks_tilde.hpp"
#include "dihedral/theta.hpp"
#include "dihedral/weierstrass.hpp"

namespace dihedral::verify {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tol = 0.0;
  bool pass = false;
};

inline CheckResult near(const std::string& name, double value, double target,
                        double tol) {
  return {name, value, target, tol, std::abs(value - target) <= tol};
}

inline std::vector<CheckResult> paper_suite() {
  std::vector<CheckResult> out;

  // DE exact root and Jacobian expression
  {
    const auto r = de::residual_limit(de::kRootA, de::kRootB);
    out.push_back(near("de.root.residual_limit", std::hypot(r[0], r[1]), 0.0,
                       1e-12));
    const auto rq = de::residual(de::kRootA, de::kRootB, 0.0);
    out.push_back(near("de.root.residual_quadrature",
                       std::hypot(rq[0], rq[1]), 0.0, 1e-8));
    const double h = 1e-6;
    const auto fpp = de::residual_limit(de::kRootA + h, de::kRootB);
    const auto fpm = de::residual_limit(de::kRootA - h, de::kRootB);
    const auto fcp = de::residual_limit(de::kRootA, de::kRootB + h);
    const auto fcm = de::residual_limit(de::kRootA, de::kRootB - h);
    const double det = ((fpp[0] - fpm[0]) * (fcp[1] - fcm[1]) -
                        (fcp[0] - fcm[0]) * (fpp[1] - fpm[1])) /
                       (4.0 * h * h);
    const double formula = de::jacobian_limit(de::kRootA, de::kRootB);
    out.push_back(near("de.jacobian.magnitude", std::abs(det) / formula, 1.0,
                       1e-6));
  }

  // DCCW root and determinant
  {
    const auto r =
        dccw::residual_limit(dccw::kRootA, dccw::kRootB, dccw::kRootC);
    out.push_back(
        near("dccw.root.residual_limit", std::hypot(r[0], r[1]), 0.0, 1e-10));
    const double h = 1e-6;
    auto f = [](double a, double b) {
      return dccw::residual_limit(a, b, b * b / a);
    };
    const auto fpp = f(dccw::kRootA + h, dccw::kRootB);
    const auto fpm = f(dccw::kRootA - h, dccw::kRootB);
    const auto fcp = f(dccw::kRootA, dccw::kRootB + h);
    const auto fcm = f(dccw::kRootA, dccw::kRootB - h);
    const double det = ((fpp[0] - fpm[0]) * (fcp[1] - fcm[1]) -
                        (fcp[0] - fcm[0]) * (fpp[1] - fpm[1])) /
                       (4.0 * h * h);
    out.push_back(near("dccw.jacobian.det", det, 0.000151467, 1e-6));
  }

  // DKS sign grid and tilde root
  {
    bool signs = true;
    for (int k = 1; k <= 19; ++k) {
      const double at = 0.05 * k;
      signs = signs && dks::f1(at) > 0.0 && dks::f2(at) < 0.0;
    }
    out.push_back(
        {"dks.f1f2.signs", signs ? 1.0 : 0.0, 1.0, 0.0, signs});
    const auto tp =
        dks::tilde_period_reduced(dks::kTildeRoot, dks::kTildeRoot);
    out.push_back(near("dks.tilde_root.residual",
                       std::hypot(tp[0], tp[1]), 0.0, 1e-10));
    out.push_back(near("dks.T.corner_1", std::abs(dks::T_map(cplx(1.0, 0.0)) -
                                                  cplx(0.5, 0.0)),
                       0.0, 1e-12));
    out.push_back(near("dks.T.corner_m1",
                       std::abs(dks::T_map(cplx(-1.0, 0.0)) - cplx(0.0, 0.5)),
                       0.0, 1e-12));
    out.push_back(near("dks.rho_half", dks::rho_tilde(0.5), 0.816497, 1e-6));
  }

  // theta properties at 100 random points per modulus
  {
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0}) {
      TorusModulus tau(t);
      std::mt19937 rng(4987 + int(t * 10));
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int i = 0; i < 100; ++i) {
        const cplx z(u(rng), u(rng) * t);
        const cplx th = theta(z, tau);
        const double scale = std::max(1.0, std::abs(th));
        worst = std::max(worst, std::abs(theta(-z, tau) + th) / scale);
        worst = std::max(worst, std::abs(theta(z + 1.0, tau) + th) / scale);
        const cplx q = -std::exp(cplx(0.0, -kPi) * tau.tau() -
                                 cplx(0.0, 2.0 * kPi) * z);
        worst = std::max(worst,
                         std::abs(theta(z + tau.tau(), tau) - q * th) /
                             std::max(1.0, std::abs(q * th)));
        worst = std::max(
            worst, std::abs(theta(std::conj(z), tau) - std::conj(th)) / scale);
      }
      worst = std::max(worst,
                       std::abs(theta_prime_zero(tau)) > 0.0 ? 0.0 : 1.0);
    }
    out.push_back(near("theta.properties.residual", worst, 0.0, 1e-12));
  }

  return out;
}

inline std::vector<CheckResult> properties_suite() {
  std::vector<CheckResult> out;

  // quadrature identities
  {
    auto one = [](cplx) { return cplx(1.0, 0.0); };
    const auto beta = quad::integrate_segment(one, cplx(0.0), cplx(1.0),
                                              -0.5, -0.5);
    out.push_back(
        near("quad.beta_half_half", beta.value.real(), kPi, 1e-10));
    const double alpha = 1.0 / 3.0;
    const auto refl = quad::integrate_segment(one, cplx(0.0), cplx(1.0),
                                              alpha - 1.0, -alpha);
    out.push_back(near("quad.euler_reflection", refl.value.real(),
                       kPi / std::sin(kPi * alpha), 1e-10));
    auto invsq = [](double t) { return cplx(1.0 / (t * t), 0.0); };
    const auto hl = quad::integrate_halfline(invsq, 1.0, -2.0);
    out.push_back(near("quad.halfline_invsq", hl.value.real(), 1.0, 1e-10));
  }

  // contour-radius invariance
  {
    const auto c1 = de::residual(2.1, 3.2, 0.1);
    const de::Contours alt = de::Contours::alternate(2.1, 3.2);
    const auto c2 = de::residual(2.1, 3.2, 0.1, {}, &alt);
    out.push_back(near("quad.contour_invariance",
                       std::hypot(c1[0] - c2[0], c1[1] - c2[1]), 0.0, 1e-10));
  }

  // residue consistency at alpha = 0: quadrature equals the closed forms
  {
    const auto rq = de::residual(2.0, 3.0, 0.0);
    const auto rl = de::residual_limit(2.0, 3.0);
    out.push_back(near("de.residue_consistency",
                       std::hypot(rq[0] - rl[0], rq[1] - rl[1]), 0.0, 1e-10));
    const auto cq = dccw::residual({2.0, 3.0, 4.5, 0.0});
    const auto cl = dccw::residual_limit(2.0, 3.0, 4.5);
    out.push_back(near("dccw.residue_consistency",
                       std::hypot(cq[0] - cl[0], cq[1] - cl[1]), 0.0, 1e-8));
  }

  // null identity on random points for each family
  {
    double worst = 0.0;
    std::mt19937 rng(1311);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.1, 3.0);
    const auto hp =
        de::weierstrass_data({de::kRootA, de::kRootB, 0.1, 1.2});
    const WeierstrassData data{hp};
    FormEvaluator ev(data);
    for (int i = 0; i < 400; ++i) {
      const cplx z(ux(rng), uy(rng));
      const OmegaTriple w = ev.omega(z);
      const cplx nv = w.w1 * w.w1 + w.w2 * w.w2 + w.w3 * w.w3;
      const double sc =
          std::norm(w.w1) + std::norm(w.w2) + std::norm(w.w3);
      worst = std::max(worst, std::abs(nv) / std::max(sc, 1e-30));
    }
    out.push_back(near("weierstrass.null_identity", worst, 0.0, 1e-10));
  }

  // theta argument principle: one zero per fundamental parallelogram
  {
    TorusModulus tau(1.0);
    const cplx lo(-0.5, -0.5), hi(0.5, 0.5);
    const cplx corners[5] = {lo, cplx(hi.real(), lo.imag()), hi,
                             cplx(lo.real(), hi.imag()), lo};
    double total = 0.0;
    const int n = 400;
    for (int e = 0; e < 4; ++e) {
      cplx prev = theta(corners[e], tau);
      for (int i = 1; i <= n; ++i) {
        const cplx z =
            corners[e] + (corners[e + 1] - corners[e]) * (double(i) / n);
        const cplx cur = theta(z, tau);
        total += std::arg(cur / prev);
        prev = cur;
      }
    }
    out.push_back(
        near("theta.argument_principle", total / (2.0 * kPi), 1.0, 1e-8));
  }

  return out;
}

}  // namespace dihedral::verify
