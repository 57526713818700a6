#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "tubepot/errors.hpp"
#include "tubepot/grid_function.hpp"
#include "tubepot/reports.hpp"
#include "tubepot/shooting.hpp"

using namespace tubepot;

namespace {

GridFunction random_grid(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(1, 40);
  std::uniform_real_distribution<double> step(1e-8, 0.3);
  std::uniform_real_distribution<double> val(-1e3, 1e3);
  std::uniform_int_distribution<int> scale_pow(-200, 200);
  GridFunction g;
  double u = 0.0;
  const int m = len(rng);
  for (int i = 0; i < m; ++i) {
    const double scale = std::pow(2.0, scale_pow(rng) / 8);
    g.push_back(u, val(rng) * scale, std::abs(val(rng)), std::abs(val(rng)) + 1e-30);
    u += step(rng);
  }
  return g;
}

bool grids_identical(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.u[i] != b.u[i] || a.h[i] != b.h[i] || a.h1[i] != b.h1[i] ||
        a.h2[i] != b.h2[i])
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("serialization round-trips are bit-exact") {
  std::mt19937 rng(424242u);
  for (int trial = 0; trial < 25; ++trial) {
    const GridFunction g = random_grid(rng);
    CHECK(grids_identical(g, grid_from_csv(to_csv(g))));
    CHECK(grids_identical(g, grid_from_json(to_json(g))));
  }
}

TEST_CASE("17-digit formatting reproduces awkward doubles") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.62607015e-34, -0.0,
                   3.14159265358979323846, 2.2250738585072014e-308}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("CSV header is mandatory and exact") {
  CHECK_THROWS_AS(grid_from_csv("x,y\n0,1\n"), InconsistentInputError);
  CHECK_THROWS_AS(grid_from_csv(""), InconsistentInputError);
  CHECK_THROWS_AS(grid_from_csv("u,h,h1,h2\n0,1,junk,2\n"),
                  InconsistentInputError);
  const GridFunction g = grid_from_csv("u,h,h1,h2\n0,1,0,2\n0.5,1.5,1,2\n");
  CHECK(g.size() == 2);
  CHECK(g.h2[1] == 2.0);
}

TEST_CASE("grid validity checks") {
  GridFunction bad_start;
  bad_start.push_back(0.5, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(bad_start.check(), InconsistentInputError);

  GridFunction non_monotone;
  non_monotone.push_back(0.0, 0.0, 0.0, 1.0);
  non_monotone.push_back(0.5, 0.0, 0.0, 1.0);
  non_monotone.push_back(0.5, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(non_monotone.check(), InconsistentInputError);

  GridFunction nan_entry;
  nan_entry.push_back(0.0, std::nan(""), 0.0, 1.0);
  CHECK_THROWS_AS(nan_entry.check(), InconsistentInputError);
}

TEST_CASE("solution JSON carries every field bit-exactly") {
  const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
  const std::vector<double> probes{0.25, 0.5, 1.0};
  const PotentialSolution sol =
      solve_potential(space, 3.0, 1.2, ShootingConfig{}, probes);
  const PotentialSolution back = solution_from_json(solution_to_json(sol));
  CHECK(back.space.family == sol.space.family);
  CHECK(back.space.n == sol.space.n);
  CHECK(back.lambda == sol.lambda);
  CHECK(back.r == sol.r);
  CHECK(back.a == sol.a);
  CHECK(back.achieved_radius == sol.achieved_radius);
  CHECK(grids_identical(back.grid, sol.grid));
}

TEST_CASE("interpolation reproduces a cubic exactly") {
  // h = u^3 has h' = 3u^2, h'' = 6u; quintic/cubic Hermite are exact on it
  GridFunction g;
  for (double u : {0.0, 0.4, 1.1, 1.5})
    g.push_back(u, u * u * u, 3.0 * u * u, 6.0 * u);
  for (double x : {0.2, 0.7, 1.3}) {
    CHECK(eval_h(g, x) == doctest::Approx(x * x * x).epsilon(1e-14));
    CHECK(eval_h1(g, x) == doctest::Approx(3.0 * x * x).epsilon(1e-13));
  }
  CHECK(find_node(g, 1.1) == 2);
  CHECK(find_node(g, 0.9) == -1);
}
