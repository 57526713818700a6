#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "support/test_util.hpp"
#include "tubepot/errors.hpp"
#include "tubepot/shooting.hpp"

using namespace tubepot;
using test_util::linspace;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("hyperbolic ball-radius solve hits the log-secant potential") {
  const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
  const std::vector<double> probes{1.0};
  const PotentialSolution sol =
      solve_potential(space, 3.0, 0.5 * kPi, ShootingConfig{}, probes);
  CHECK(std::abs(sol.a) < 1e-4);
  const long i = find_node(sol.grid, 1.0);
  CHECK(std::abs(sol.grid.h[i] - 0.6156264703860141) < 1e-4);
  CHECK(std::abs(sol.achieved_radius - sol.r) < 1e-6);
  CHECK(sol.grid.h.front() == sol.a);
  CHECK(sol.grid.h1.front() == 0.0);
  CHECK(std::abs(sol.grid.h2.front() - std::exp(3.0 * sol.a / 2.0)) < 1e-10);
}

TEST_CASE("one-dimensional solve recovers the log 2 center value") {
  const SpaceSpec space = SpaceSpec::make(Family::Euclidean, 1);
  const PotentialSolution sol =
      solve_potential(space, 1.0, 0.5 * kPi, ShootingConfig{});
  CHECK(std::abs(sol.a - std::log(2.0)) < 1e-4);
}

TEST_CASE("shooting map values and monotonicity") {
  const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
  const ShootingConfig cfg;
  const auto at0 = radius_of(space, 3.0, 0.0, cfg);
  REQUIRE(at0.has_value());
  CHECK(std::abs(*at0 - 0.5 * kPi) < 1e-3);
  const auto at1 = radius_of(space, 3.0, 1.0, cfg);
  REQUIRE(at1.has_value());
  CHECK(*at1 < 0.5 * kPi);

  const auto euclid = radius_of(SpaceSpec::make(Family::Euclidean, 1), 1.0,
                                std::log(2.0), cfg);
  REQUIRE(euclid.has_value());
  CHECK(std::abs(*euclid - 0.5 * kPi) < 1e-3);

  // the full-tube potential has a small positive center value, so blow-up
  // inside (0, pi) needs a above it
  double prev = 10.0;
  for (double a : {0.05, 0.5, 1.0, 2.0}) {
    const auto us = radius_of(space, 1.0, a, cfg);
    REQUIRE(us.has_value());
    CHECK(*us < prev);
    prev = *us;
  }
}

TEST_CASE("center values decrease as tubes grow") {
  const SpaceSpec space = SpaceSpec::make(Family::RoundSphere, 2);
  const std::vector<double> radii{1.0, 2.0, 3.0};
  const std::vector<SweepEntry> sweep =
      family_sweep(space, 1.0, radii, ShootingConfig{});
  REQUIRE(sweep.size() == 3);
  for (const SweepEntry& e : sweep) REQUIRE(e.solution.has_value());
  CHECK(sweep[0].solution->a > sweep[1].solution->a);
  CHECK(sweep[1].solution->a > sweep[2].solution->a);
}

TEST_CASE("hyperbolic center value stays above the uniform bound") {
  const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
  const PotentialSolution sol =
      solve_potential(space, 1.0, 3.0, ShootingConfig{});
  CHECK(sol.a >= -7.874804972861210);
}

TEST_CASE("comparison: larger tubes carry smaller potentials") {
  const SpaceSpec space = SpaceSpec::make(Family::RoundSphere, 2);
  const std::vector<double> radii{2.0, 3.0, 4.0};
  const std::vector<double> probes = linspace(0.0, 1.9, 39);
  const std::vector<SweepEntry> sweep =
      family_sweep(space, 1.0, radii, ShootingConfig{}, probes);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    REQUIRE(sweep[i].solution.has_value());
    for (double p : probes) {
      const long ia = find_node(sweep[i].solution->grid, p);
      const long ib = find_node(sweep[i - 1].solution->grid, p);
      CHECK(sweep[i].solution->grid.h[ia] <=
            sweep[i - 1].solution->grid.h[ib] + 1e-3);
    }
  }
}

TEST_CASE("sweep warm start agrees with cold and parallel runs") {
  const SpaceSpec space = SpaceSpec::make(Family::RoundSphere, 2);
  const std::vector<double> radii{1.5, 2.5, 3.5};
  const ShootingConfig cfg;
  const auto warm = family_sweep(space, 1.0, radii, cfg, {}, {true, 1});
  const auto cold = family_sweep(space, 1.0, radii, cfg, {}, {false, 1});
  const auto par = family_sweep(space, 1.0, radii, cfg, {}, {false, 3});
  for (std::size_t i = 0; i < radii.size(); ++i) {
    REQUIRE(warm[i].solution.has_value());
    REQUIRE(cold[i].solution.has_value());
    REQUIRE(par[i].solution.has_value());
    CHECK(std::abs(warm[i].solution->a - cold[i].solution->a) <
          cfg.radius_tol);
    // cold sequential and parallel runs follow identical per-radius paths
    CHECK(par[i].solution->a == cold[i].solution->a);
    CHECK(std::abs(warm[i].solution->achieved_radius - radii[i]) <
          cfg.radius_tol);
  }
}

TEST_CASE("empty sweep yields empty output") {
  CHECK(family_sweep(SpaceSpec::make(Family::RoundSphere, 2), 1.0, {},
                     ShootingConfig{})
            .empty());
}

TEST_CASE("per-radius failures do not abort the sweep") {
  const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
  const std::vector<double> radii{1.0, 3.5};  // 3.5 > r_max
  const auto sweep = family_sweep(space, 1.0, radii, ShootingConfig{});
  CHECK(sweep[0].solution.has_value());
  CHECK(!sweep[1].solution.has_value());
  CHECK(!sweep[1].error.empty());
}

TEST_CASE("repeated solves are bit-identical") {
  const SpaceSpec space = SpaceSpec::make(Family::RoundSphere, 3);
  const std::vector<double> probes = linspace(0.0, 1.0, 11);
  const PotentialSolution a =
      solve_potential(space, 1.0, 2.0, ShootingConfig{}, probes);
  const PotentialSolution b =
      solve_potential(space, 1.0, 2.0, ShootingConfig{}, probes);
  CHECK(a.a == b.a);
  REQUIRE(a.grid.size() == b.grid.size());
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    CHECK(a.grid.u[i] == b.grid.u[i]);
    CHECK(a.grid.h[i] == b.grid.h[i]);
    CHECK(a.grid.h1[i] == b.grid.h1[i]);
    CHECK(a.grid.h2[i] == b.grid.h2[i]);
  }
}

TEST_CASE("bracket expansion recovers from bad starting brackets") {
  const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
  ShootingConfig cfg;
  cfg.a_lo = 3.0;
  cfg.a_hi = 4.0;  // both blow up before pi/2; lower end must expand down
  const PotentialSolution sol = solve_potential(space, 3.0, 0.5 * kPi, cfg);
  CHECK(std::abs(sol.a) < 1e-4);

  ShootingConfig cfg2;
  cfg2.a_lo = -30.0;
  cfg2.a_hi = -20.0;  // neither blows up by pi/2; upper end must expand up
  const PotentialSolution sol2 = solve_potential(space, 3.0, 0.5 * kPi, cfg2);
  CHECK(std::abs(sol2.a) < 1e-4);
}

TEST_CASE("invalid requests are rejected") {
  const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
  CHECK_THROWS_AS(solve_potential(space, 0.0, 1.0, ShootingConfig{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_potential(space, 1.0, 3.5, ShootingConfig{}),
                  std::domain_error);
  CHECK_THROWS_AS(solve_potential(space, 1.0, -1.0, ShootingConfig{}),
                  std::domain_error);
  ShootingConfig tiny;
  tiny.max_iters = 2;
  CHECK_THROWS_AS(solve_potential(space, 1.0, 2.0, tiny), ConvergenceError);
}
