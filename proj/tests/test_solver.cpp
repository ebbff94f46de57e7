#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "dihedral/solver.hpp"

using namespace dihedral;
using Catch::Matchers::WithinAbs;

TEST_CASE("solver: DE alpha = 0 from a generic start") {
  const auto rec = solve_family(Family::de, 0.0, std::nullopt, {2.3, 3.1});
  REQUIRE(rec.solved);
  CHECK(rec.residual_norm < 1e-8);
  CHECK_THAT(rec.params[0], WithinAbs(de::kRootA, 1e-8));
  CHECK_THAT(rec.params[1], WithinAbs(de::kRootB, 1e-8));
  CHECK(rec.rho > 0.0);
}

TEST_CASE("solver: DCCW alpha = 0 with the growth-rate constraint") {
  const auto rec = solve_family(Family::dccw, 0.0, std::nullopt, {1.9, 5.6});
  REQUIRE(rec.solved);
  CHECK_THAT(rec.params[0], WithinAbs(dccw::kRootA, 1e-8));
  CHECK_THAT(rec.params[1], WithinAbs(dccw::kRootB, 1e-8));
}

TEST_CASE("solver: DKS alpha = 0, tau = i") {
  const auto rec = solve_family(Family::dks, 0.0, 1.0, {0.4, 0.4});
  REQUIRE(rec.solved);
  CHECK_THAT(rec.params[0], WithinAbs(dks::kTorusRoot, 1e-8));
  CHECK_THAT(rec.params[1], WithinAbs(dks::kTorusRoot, 1e-8));
}

TEST_CASE("solver: divergence is reported, not thrown") {
  // start far outside the basin with a tight iteration budget
  SolveOptions opt;
  opt.max_iterations = 2;
  const auto rec = solve_family(Family::de, 0.0, std::nullopt, {50.0, 90.0},
                                opt);
  CHECK_FALSE(rec.solved);
  CHECK_FALSE(rec.message.empty());
}

TEST_CASE("solver: DE continuation schedule") {
  const std::vector<double> sched{0.0, 0.02, 0.025, 1.0 / 30.0, 0.05, 0.1,
                                  0.2};
  const auto branch = continuation(Family::de, sched);
  REQUIRE(branch.size() == sched.size());
  for (std::size_t i = 0; i < branch.size(); ++i) {
    CHECK(branch[i].solved);
    CHECK(branch[i].residual_norm < 1e-8);
  }
  // parameters vary continuously: adjacent steps differ by a modest multiple
  // of the step size
  for (std::size_t i = 1; i < branch.size(); ++i) {
    const double da = std::abs(branch[i].params[0] - branch[i - 1].params[0]);
    const double db = std::abs(branch[i].params[1] - branch[i - 1].params[1]);
    const double step = sched[i] - sched[i - 1];
    CHECK(da < 10.0 * step);
    CHECK(db < 10.0 * step);
  }
}

TEST_CASE("solver: schedule validation") {
  const std::vector<double> bad1{0.1, 0.2};
  CHECK_THROWS_AS(continuation(Family::de, bad1), std::invalid_argument);
  const std::vector<double> bad2{0.0, 0.2, 0.1};
  CHECK_THROWS_AS(continuation(Family::de, bad2), std::invalid_argument);
}

TEST_CASE("solver: DKS tau sweep at alpha = 0") {
  const std::vector<double> taus{0.8, 0.9, 1.0, 1.1, 1.25};
  const auto recs = tau_sweep(0.0, taus);
  REQUIRE(recs.size() == taus.size());
  for (const auto& r : recs) {
    CHECK(r.solved);
    CHECK(r.residual_norm < 1e-8);
  }
  // tau = i lands exactly on the cached root
  CHECK_THAT(recs[2].params[0], WithinAbs(dks::kTorusRoot, 1e-8));
}

TEST_CASE("solver: DKS branch truncates gracefully past its terminal alpha") {
  // the tau = i branch ends near alpha ~ 0.048 where c reaches Im tau / 2;
  // a schedule crossing it yields a truncated branch, not an exception
  const std::vector<double> sched{0.0, 0.02, 0.04, 0.06};
  const auto branch = continuation(Family::dks, sched, 1.0);
  CHECK(branch.size() >= 3);
  CHECK(branch.size() < sched.size());
  for (const auto& r : branch) CHECK(r.solved);
}
