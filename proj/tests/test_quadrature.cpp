#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dihedral/quadrature.hpp"
#include "oracles.hpp"

using namespace dihedral;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
cplx one(cplx) { return cplx(1.0, 0.0); }
}  // namespace

TEST_CASE("segment: Beta endpoint weights") {
  // oracle: Euler Beta identity B(1/2,1/2) = pi
  auto r = quad::integrate_segment(one, cplx(0.0), cplx(1.0), -0.5, -0.5);
  REQUIRE(r.converged);
  CHECK_THAT(r.value.real(), WithinRel(std::beta(0.5, 0.5), 1e-12));
  CHECK_THAT(r.value.real(), WithinRel(M_PI, 1e-12));
  CHECK_THAT(r.value.imag(), WithinAbs(0.0, 1e-13));
}

TEST_CASE("segment: plain interval length") {
  auto r = quad::integrate_segment(one, cplx(0.0), cplx(1.0), 0.0, 0.0);
  REQUIRE(r.converged);
  CHECK_THAT(r.value.real(), WithinRel(1.0, 1e-13));
}

TEST_CASE("segment: Euler reflection weights") {
  // exp_a = alpha-1, exp_b = -alpha: B(alpha, 1-alpha) = pi/sin(pi alpha)
  const double alpha = 1.0 / 3.0;
  auto r = quad::integrate_segment(one, cplx(0.0), cplx(1.0), alpha - 1.0,
                                   -alpha);
  REQUIRE(r.converged);
  CHECK_THAT(r.value.real(), WithinRel(M_PI / std::sin(M_PI * alpha), 1e-11));
}

TEST_CASE("segment: rejects non-integrable exponents") {
  CHECK_THROWS_AS(
      quad::integrate_segment(one, cplx(0.0), cplx(1.0), -1.0, 0.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      quad::integrate_segment(one, cplx(0.0), cplx(1.0), 0.0, -1.5),
      std::invalid_argument);
}

TEST_CASE("segment: linearity, reversal, splitting") {
  std::mt19937 rng(7121);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto f = [](cplx z) { return std::exp(z) / (z + cplx(2.0, 1.0)); };
  const cplx a(0.2, 0.1), b(1.3, 0.9);

  const cplx base =
      quad::require(quad::integrate_segment(f, a, b, 0.0, 0.0), "base");

  for (int k = 0; k < 5; ++k) {
    const cplx c(u(rng), u(rng));
    auto fc = [&](cplx z) { return c * f(z); };
    const cplx scaled =
        quad::require(quad::integrate_segment(fc, a, b, 0.0, 0.0), "scaled");
    CHECK_THAT(std::abs(scaled - c * base), WithinAbs(0.0, 1e-11));
  }

  const cplx rev =
      quad::require(quad::integrate_segment(f, b, a, 0.0, 0.0), "rev");
  CHECK_THAT(std::abs(rev + base), WithinAbs(0.0, 1e-11));

  const cplx mid = a + 0.37 * (b - a);
  const cplx s1 =
      quad::require(quad::integrate_segment(f, a, mid, 0.0, 0.0), "s1");
  const cplx s2 =
      quad::require(quad::integrate_segment(f, mid, b, 0.0, 0.0), "s2");
  CHECK_THAT(std::abs(s1 + s2 - base), WithinAbs(0.0, 1e-11));
}

TEST_CASE("arc: residue of 1/z and chord displacement") {
  auto invz = [](double th) {
    return 1.0 / std::exp(cplx(0.0, th));  // z = e^{i th} on the unit circle
  };
  auto r = quad::integrate_arc(invz, cplx(0.0), 1.0, 0.0, 2.0 * M_PI);
  REQUIRE(r.converged);
  CHECK_THAT(std::abs(r.value - cplx(0.0, 2.0 * M_PI)), WithinAbs(0.0, 1e-11));

  // f = 1 integrates to the chord b - a
  const cplx c(0.4, 0.0);
  const double R = 1.7, th0 = 0.3, th1 = 2.1;
  auto onef = [](double) { return cplx(1.0, 0.0); };
  auto r2 = quad::integrate_arc(onef, c, R, th0, th1);
  const cplx chord = (c + R * std::exp(cplx(0.0, th1))) -
                     (c + R * std::exp(cplx(0.0, th0)));
  CHECK_THAT(std::abs(r2.value - chord), WithinAbs(0.0, 1e-11));
}

TEST_CASE("arc: margin rejection") {
  auto f = [](double) { return cplx(1.0, 0.0); };
  const cplx sing[] = {cplx(1.0, 0.0)};
  CHECK_THROWS_AS(quad::integrate_arc(f, cplx(0.0), 1.0 + 1e-9, 0.0, 1.0,
                                      {}, std::span<const cplx>(sing, 1)),
                  std::invalid_argument);
}

TEST_CASE("halfline: inverse square") {
  auto f = [](double t) { return cplx(1.0 / (t * t), 0.0); };
  auto r = quad::integrate_halfline(f, 1.0, -2.0);
  REQUIRE(r.converged);
  CHECK_THAT(r.value.real(), WithinRel(1.0, 1e-11));
}

TEST_CASE("halfline: sqrt singularity at start, change-of-variables oracle") {
  // Int_1^inf dt/(sqrt(t) sqrt(t^2-1)); with t = 1/s^2 this becomes
  // Int_0^1 2 ds / sqrt(1-s^4), evaluated by the segment engine as oracle.
  auto f = [](double t) {
    return cplx(1.0 / (std::sqrt(t) * std::sqrt(t * t - 1.0)), 0.0);
  };
  auto r = quad::integrate_halfline(f, 1.0, -2.0, {}, -0.5);
  REQUIRE(r.converged);

  auto g = [](cplx s) {
    const double v = s.real();
    return cplx(2.0 / std::sqrt((1.0 + v * v) * (1.0 + v)), 0.0);
  };  // 2/sqrt(1-s^4) = 2 (1-s)^{-1/2} / sqrt((1+s)(1+s^2))
  auto o = quad::integrate_segment(g, cplx(0.0), cplx(1.0), 0.0, -0.5);
  REQUIRE(o.converged);
  CHECK_THAT(r.value.real(), WithinRel(o.value.real(), 1e-10));
}

TEST_CASE("halfline: psi2-type integrand vs dense trapezoid oracle") {
  // psi2(1/2, 1/2) via the library, against a cosh-substituted trapezoid
  const double x = 0.5, y = 0.5;
  auto f = [&](double t) {
    return cplx(std::sqrt(t) / (std::sqrt(t * t - 1.0) * (t + x) * (t - y)),
                0.0);
  };
  auto r = quad::integrate_halfline(f, 1.0, -2.5, {}, -0.5);
  REQUIRE(r.converged);

  // oracle: t = cosh(u) removes both the endpoint singularity and the tail
  auto g = [&](double u) {
    const double t = std::cosh(u);
    return cplx(std::sqrt(t) / ((t + x) * (t - y)), 0.0);
  };
  const cplx o = oracle::trapezoid(g, 0.0, 42.0, 800000);
  CHECK_THAT(r.value.real(), WithinRel(o.real(), 1e-8));
}

TEST_CASE("halfline: insufficient decay rejected") {
  auto f = [](double t) { return cplx(1.0 / t, 0.0); };
  CHECK_THROWS_AS(quad::integrate_halfline(f, 1.0, -1.0),
                  std::invalid_argument);
}
