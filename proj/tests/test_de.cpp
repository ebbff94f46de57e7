#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dihedral/de.hpp"
#include "oracles.hpp"

using namespace dihedral;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("de: closed-form limit residual") {
  // direct arithmetic at (2,3): (1 - 6/5, -1 + 3/5)
  const auto r = de::residual_limit(2.0, 3.0);
  CHECK_THAT(r[0], WithinRel(-0.2, 1e-13));
  CHECK_THAT(r[1], WithinRel(-0.4, 1e-13));

  const auto r0 = de::residual_limit(de::kRootA, de::kRootB);
  CHECK_THAT(r0[0], WithinAbs(0.0, 1e-14));
  CHECK_THAT(r0[1], WithinAbs(0.0, 1e-14));
}

TEST_CASE("de: root decimals") {
  CHECK_THAT(de::kRootA, WithinAbs(2.334414218338977, 1e-15));
  CHECK_THAT(de::kRootB, WithinAbs(3.146264369941972, 1e-15));
  CHECK_THAT(de::kRootB * de::kRootB, WithinRel(5.0 + 2.0 * std::sqrt(6.0), 1e-15));
}

TEST_CASE("de: quadrature residual matches the limit at alpha = 0") {
  for (auto [a, b] : {std::pair{2.0, 3.0}, {de::kRootA, de::kRootB},
                      {1.7, 2.9}}) {
    const auto rq = de::residual(a, b, 0.0);
    const auto rl = de::residual_limit(a, b);
    CHECK_THAT(rq[0], WithinAbs(rl[0], 1e-10));
    CHECK_THAT(rq[1], WithinAbs(rl[1], 1e-10));
  }
}

TEST_CASE("de: residue-theorem agreement of the loop integrals at alpha=0") {
  // each circle integral equals 2 pi i times the sum of enclosed residues of
  // the rational limit form (residue oracle on small circles)
  const double a = de::kRootA, b = de::kRootB;
  const auto li = de::loop_integrals(a, b, 0.0);

  auto f1 = [&](cplx z) { return oracle::de_phi1_rational(z, a, b); };
  auto f2 = [&](cplx z) { return oracle::de_phi2_rational(z, a, b); };
  const cplx tpii(0.0, 2.0 * kPi);

  // gamma_{0,1} encloses {0, 1}: phi1 has a pole only at 1, phi2 only at 0
  const cplx r1_01 = tpii * oracle::residue(f1, cplx(1.0, 0.0));
  const cplx r2_01 = tpii * oracle::residue(f2, cplx(0.0, 0.0));
  CHECK_THAT(std::abs(li.i1_01 - r1_01) / std::abs(r1_01),
             WithinAbs(0.0, 1e-10));
  CHECK_THAT(std::abs(li.i2_01 - r2_01) / std::abs(r2_01),
             WithinAbs(0.0, 1e-10));

  // gamma_{1,a}: phi1 pole at 1, phi2 pole at a
  const cplx r1_1a = tpii * oracle::residue(f1, cplx(1.0, 0.0));
  const cplx r2_1a = tpii * oracle::residue(f2, cplx(a, 0.0));
  CHECK_THAT(std::abs(li.i1_1a - r1_1a) / std::abs(r1_1a),
             WithinAbs(0.0, 1e-10));
  CHECK_THAT(std::abs(li.i2_1a - r2_1a) / std::abs(r2_1a),
             WithinAbs(0.0, 1e-10));

  // gamma_{a,b}: phi1 pole at b, phi2 pole at a
  const cplx r1_ab = tpii * oracle::residue(f1, cplx(b, 0.0));
  const cplx r2_ab = tpii * oracle::residue(f2, cplx(a, 0.0));
  CHECK_THAT(std::abs(li.i1_ab - r1_ab) / std::abs(r1_ab),
             WithinAbs(0.0, 1e-10));
  CHECK_THAT(std::abs(li.i2_ab - r2_ab) / std::abs(r2_ab),
             WithinAbs(0.0, 1e-10));
}

TEST_CASE("de: contour-radius independence") {
  for (double alpha : {0.0, 0.15}) {
    const de::Contours alt = de::Contours::alternate(2.1, 3.2);
    const auto r1 = de::residual(2.1, 3.2, alpha);
    const auto r2 = de::residual(2.1, 3.2, alpha, {}, &alt);
    CHECK_THAT(r1[0], WithinAbs(r2[0], 1e-10));
    CHECK_THAT(r1[1], WithinAbs(r2[1], 1e-10));
  }
}

TEST_CASE("de: reduction is exact (orthogonal components vanish)") {
  for (double alpha : {0.02, 0.1, 0.2}) {
    const auto rd = de::residual_detail(2.2, 3.1, alpha);
    CHECK_THAT(rd.orthogonal[0], WithinAbs(0.0, 1e-10));
    CHECK_THAT(rd.orthogonal[1], WithinAbs(0.0, 1e-10));
  }
}

TEST_CASE("de: alpha -> 0 continuity and Richardson extrapolation") {
  const double a = 2.2, b = 3.1;
  const auto r0 = de::residual_limit(a, b);
  const auto r1 = de::residual(a, b, 1e-4);
  const auto r2 = de::residual(a, b, 5e-5);
  for (int i = 0; i < 2; ++i) {
    CHECK_THAT(r1[i], WithinAbs(r0[i], 1e-2));
    const double extrap = 2.0 * r2[i] - r1[i];
    CHECK_THAT(extrap, WithinAbs(r0[i], 1e-6));
  }
}

TEST_CASE("de: Jacobian of the limit map") {
  // finite differences of the closed form against the paper expression; the
  // signed determinant is the negative of the printed formula
  auto f = [](double a, double b) -> std::array<double, 2> {
    return de::residual_limit(a, b);
  };
  const auto J = oracle::fd_jacobian(f, de::kRootA, de::kRootB, 1e-6);
  const double det = oracle::det2(J);
  const double formula = de::jacobian_limit(de::kRootA, de::kRootB);
  CHECK_THAT(det, WithinRel(-formula, 1e-7));
  CHECK_THAT(std::abs(det), WithinRel(std::abs(formula), 1e-7));
  // fixed reference value of the expression at the root
  CHECK_THAT(formula, WithinRel(1.6338346949682407, 1e-12));
}

TEST_CASE("de: symmetric period conditions close automatically") {
  // with the (0,1), (1,a), (a,b) conditions closed, the mirrored contours
  // gamma_{-a,-1} and gamma_{-b,-a} close too
  const double a = de::kRootA, b = de::kRootB;
  const auto li = de::loop_integrals(a, b, 0.0);
  const double rho = de::solve_rho(li, 0.0);

  const HalfPlaneForm f1 = de::phi1(a, b, 0.0);
  const HalfPlaneForm f2 = de::phi2(a, b, 0.0);
  auto circ = [&](const HalfPlaneForm& f, double pass, double start) {
    const cplx c(0.5 * (pass + start), 0.0);
    const double R = 0.5 * (start - pass);
    auto g = [&](double th) { return f.eval_on_circle(c, R, th); };
    return quad::require(quad::integrate_arc(g, c, R, 0.0, 2.0 * kPi),
                         "mirror");
  };
  // gamma_{-a,-1}: start in (-1, 0), pass in (-b, -a)
  const cplx i1m = circ(f1, -0.5 * (a + b), -0.5);
  const cplx i2m = circ(f2, -0.5 * (a + b), -0.5);
  CHECK_THAT(std::abs(rho * i1m - std::conj(i2m / rho)), WithinAbs(0.0, 1e-9));
  // gamma_{-b,-a}: start in (-a, -1), pass in (-inf, -b)
  const cplx i1n = circ(f1, -b - 0.5 * (b - a), -0.5 * (1.0 + a));
  const cplx i2n = circ(f2, -b - 0.5 * (b - a), -0.5 * (1.0 + a));
  CHECK_THAT(std::abs(rho * i1n - std::conj(i2n / rho)), WithinAbs(0.0, 1e-9));
}

TEST_CASE("de: parameter validation") {
  CHECK_THROWS_AS(de::Params({0.9, 3.0, 0.0, 1.0}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(de::Params({2.0, 1.5, 0.0, 1.0}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(de::Params({2.0, 3.0, -0.1, 1.0}).validate(),
                  std::invalid_argument);
}
