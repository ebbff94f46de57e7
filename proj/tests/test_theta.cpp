#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dihedral/theta.hpp"

using namespace dihedral;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<cplx> random_points(TorusModulus tau, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  std::vector<cplx> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i)
    pts.push_back(cplx(ux(rng), ux(rng) * tau.im_tau));
  return pts;
}

}  // namespace

TEST_CASE("theta: zero at the origin and at lattice points") {
  for (double t : {0.5, 1.0, 2.0}) {
    TorusModulus tau(t);
    CHECK(theta(cplx(0.0, 0.0), tau) == cplx(0.0, 0.0));
    CHECK(theta(cplx(3.0, 0.0), tau) == cplx(0.0, 0.0));
    CHECK(theta(cplx(-2.0, -t), tau) == cplx(0.0, 0.0));
  }
}

TEST_CASE("theta: transformation properties at random points") {
  // (1) odd; (2) theta(z+1) = -theta(z) (the series' actual quasi-period);
  // (3) theta(z+tau) = -e^{-i pi tau - 2 pi i z} theta(z);
  // (5) theta(conj z) = conj theta(z) for purely imaginary tau.
  for (double t : {0.5, 1.0, 2.0}) {
    TorusModulus tau(t);
    for (cplx z : random_points(tau, 100, 92101 + int(10 * t))) {
      const cplx th = theta(z, tau);
      const double scale = std::max(1.0, std::abs(th));
      CHECK_THAT(std::abs(theta(-z, tau) + th) / scale, WithinAbs(0.0, 1e-12));
      CHECK_THAT(std::abs(theta(z + 1.0, tau) + th) / scale,
                 WithinAbs(0.0, 1e-12));
      const cplx q = -std::exp(cplx(0.0, -kPi) * tau.tau() -
                               cplx(0.0, 2.0 * kPi) * z);
      const cplx lhs = theta(z + tau.tau(), tau);
      CHECK_THAT(std::abs(lhs - q * th) / std::max(1.0, std::abs(lhs)),
                 WithinAbs(0.0, 1e-12));
      CHECK_THAT(std::abs(theta(std::conj(z), tau) - std::conj(th)) / scale,
                 WithinAbs(0.0, 1e-12));
    }
  }
}

TEST_CASE("theta: derivative at zero") {
  // (4) nonzero, real for purely imaginary tau, and matching a central
  // finite difference of the series
  for (double t : {0.5, 1.0, 2.0}) {
    TorusModulus tau(t);
    const cplx d = theta_prime_zero(tau);
    CHECK(d.real() > 0.0);
    CHECK(d.imag() == 0.0);
    const double h = 1e-6;
    const cplx fd =
        (theta(cplx(h, 0.0), tau) - theta(cplx(-h, 0.0), tau)) / (2.0 * h);
    CHECK_THAT(std::abs(fd - d) / std::abs(d), WithinAbs(0.0, 1e-6));
  }
}

TEST_CASE("theta: real on the real axis") {
  TorusModulus tau(1.0);
  for (double x : {0.1, 0.37, 0.5, 0.83, 2.4}) {
    CHECK(theta(cplx(x, 0.0), tau).imag() == 0.0);
  }
}

TEST_CASE("theta: argument principle counts one zero per cell") {
  // winding of theta around a lattice-point-centered fundamental
  // parallelogram equals 1 (no further zeros inside)
  for (double t : {0.5, 1.0, 2.0}) {
    TorusModulus tau(t);
    auto winding = [&](cplx lo, cplx hi) {
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
      return total / (2.0 * kPi);
    };
    const double w =
        winding(cplx(-0.5, -0.5 * t), cplx(0.5, 0.5 * t));
    CHECK_THAT(w, WithinAbs(1.0, 1e-8));
  }
}

TEST_CASE("theta: no overflow for |Im z| up to 4 Im tau") {
  for (double t : {0.5, 1.0, 2.0}) {
    TorusModulus tau(t);
    for (double k : {-4.0, -2.5, 2.5, 4.0}) {
      const cplx z(0.3, k * t);
      const cplx v = theta(z, tau);
      CHECK(std::isfinite(v.real()));
      CHECK(std::isfinite(v.imag()));
      CHECK(std::abs(v) > 0.0);
    }
  }
}

TEST_CASE("theta: log form consistent with direct evaluation") {
  TorusModulus tau(1.0);
  const cplx z(0.23, 0.71);
  const LogValue lv = theta_log(z, tau);
  CHECK_THAT(std::abs(lv.value() - theta(z, tau)), WithinAbs(0.0, 1e-13));
}

TEST_CASE("theta: modulus validation") {
  CHECK_THROWS_AS(TorusModulus(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TorusModulus(-1.0), std::invalid_argument);
}
