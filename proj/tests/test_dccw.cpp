#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dihedral/dccw.hpp"
#include "oracles.hpp"

using namespace dihedral;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("dccw: root decimals and residual at the root") {
  CHECK_THAT(dccw::kRootA, WithinAbs(1.852491221153703, 1e-14));
  CHECK_THAT(dccw::kRootB, WithinAbs(5.828427124746190, 1e-14));
  CHECK_THAT(dccw::kRootC, WithinAbs(18.337772595392273, 5e-13));

  const auto r = dccw::residual_limit(dccw::kRootA, dccw::kRootB, dccw::kRootC);
  CHECK_THAT(r[0], WithinAbs(0.0, 1e-14));
  CHECK_THAT(r[1], WithinAbs(0.0, 1e-14));
}

TEST_CASE("dccw: limit residual equals exact rational arithmetic") {
  // residue-theorem oracle at (2, 3, 4): residues of the rational alpha = 0
  // forms at the enclosed poles, assembled as -(sum)/(i pi scaling)
  const double a = 2.0, b = 3.0, c = 4.0;
  auto gdh = [&](cplx z) { return oracle::dccw_gdh_rational(z, a, b, c); };
  auto igdh = [&](cplx z) { return oracle::dccw_invgdh_rational(z, a, b, c); };

  // bracket_1 = -(Res(gdh,a) + Res(igdh,1) + Res(igdh,a))  (Res(gdh,1) = 0)
  const cplx s1 = oracle::residue(gdh, cplx(a, 0.0)) +
                  oracle::residue(igdh, cplx(1.0, 0.0)) +
                  oracle::residue(igdh, cplx(a, 0.0));
  // bracket_2 = -(Res(gdh,a) + Res(gdh,c) + Res(igdh,a) + Res(igdh,c))
  const cplx s2 = oracle::residue(gdh, cplx(a, 0.0)) +
                  oracle::residue(gdh, cplx(c, 0.0)) +
                  oracle::residue(igdh, cplx(a, 0.0)) +
                  oracle::residue(igdh, cplx(c, 0.0));
  const auto r = dccw::residual_limit(a, b, c);
  CHECK_THAT(r[0], WithinRel(-s1.real(), 1e-9));
  CHECK_THAT(r[1], WithinRel(-s2.real(), 1e-9));

  // and exact rational arithmetic of the displayed brackets at (2,3,4)
  CHECK_THAT(r[0], WithinRel(-25.0 / 144.0 + 8.0 / 45.0 - 3.0 / 48.0, 1e-13));
}

TEST_CASE("dccw: quadrature residual matches the limit at alpha = 0") {
  for (auto abc :
       {std::array{2.0, 3.0, 4.5}, {dccw::kRootA, dccw::kRootB, dccw::kRootC},
        {1.9, 5.0, 14.0}}) {
    const dccw::Params p{abc[0], abc[1], abc[2], 0.0};
    const auto rq = dccw::residual(p);
    const auto rl = dccw::residual_limit(abc[0], abc[1], abc[2]);
    CHECK_THAT(rq[0], WithinAbs(rl[0], 1e-8));
    CHECK_THAT(rq[1], WithinAbs(rl[1], 1e-8));
  }
}

TEST_CASE("dccw: Jacobian determinant at the root") {
  auto f = [](double a, double b) -> std::array<double, 2> {
    return dccw::residual_limit(a, b, b * b / a);
  };
  const auto J = oracle::fd_jacobian(f, dccw::kRootA, dccw::kRootB, 1e-6);
  const double det = oracle::det2(J);
  CHECK_THAT(det, WithinAbs(dccw::kRootJacobianDet, 1e-9));
  CHECK_THAT(det, WithinAbs(0.000151467, 1e-6));
}

TEST_CASE("dccw: contour-radius independence and exact reduction") {
  const dccw::Params p = dccw::Params::constrained(1.95, 5.5, 0.08);
  const dccw::Contours alt = dccw::Contours::alternate(p.a, p.c);
  const auto r1 = dccw::residual(p);
  const auto r2 = dccw::residual(p, {}, &alt);
  CHECK_THAT(r1[0], WithinAbs(r2[0], 1e-10));
  CHECK_THAT(r1[1], WithinAbs(r2[1], 1e-10));

  const auto rd = dccw::residual_detail(p);
  CHECK_THAT(rd.orthogonal[0], WithinAbs(0.0, 1e-10));
  CHECK_THAT(rd.orthogonal[1], WithinAbs(0.0, 1e-10));
}

TEST_CASE("dccw: alpha -> 0 continuity with Richardson extrapolation") {
  const double a = 1.9, b = 5.6;
  const auto r0 = dccw::residual_limit(a, b, b * b / a);
  const auto r1 = dccw::residual_constrained(a, b, 1e-4);
  const auto r2 = dccw::residual_constrained(a, b, 5e-5);
  for (int i = 0; i < 2; ++i) {
    CHECK_THAT(r1[i], WithinAbs(r0[i], 1e-2));
    CHECK_THAT(2.0 * r2[i] - r1[i], WithinAbs(r0[i], 1e-6));
  }
}

TEST_CASE("dccw: parameter validation") {
  CHECK_THROWS_AS(dccw::Params({0.9, 3.0, 4.0, 0.0}).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(dccw::Params({2.0, 3.0, 2.5, 0.0}).validate(),
                  std::invalid_argument);
}
