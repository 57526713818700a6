#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tubepot/rescaling.hpp"
#include "tubepot/shooting.hpp"

namespace tubepot {

/// Radial geodesic length L(delta) = (1/sqrt 2) int_0^{r-delta} sqrt(h'') du
/// per cutoff, with the fitted slope of L against log(1/delta). Divergence of
/// L as delta -> 0 witnesses completeness of the tube metric.
struct CompletenessReport {
  std::vector<double> cutoffs;  // decreasing distances from the boundary
  std::vector<double> lengths;  // increasing partial lengths
  double log_slope = 0.0;
  bool log_slope_defined = false;
};

CompletenessReport completeness_length(const PotentialSolution& sol,
                                       std::vector<double> cutoffs);

/// Partial lengths (1/sqrt 2) int_0^t sqrt(K'') of the Ricci-flat potential
/// at the given abscissae (t/sqrt 2 exactly in the Euclidean case).
std::vector<double> ricci_flat_completeness(const RicciFlatPotential& K,
                                            std::span<const double> t_points);

/// Checks sqrt(h''(u)) (r - u) > 1 on grid points within `window` of the
/// blow-up radius, using achieved_radius as r. Distances below
/// `min_distance` are skipped: for lambda = n+1 the inequality's true margin
/// decays like (r-u)^2/6, which drops below the solve's own radius
/// resolution there.
struct BoundaryGrowthReport {
  bool ok = true;
  double worst_ratio = 0.0;  // min over checked points of sqrt(h'')(r-u)
  int checked = 0;
};
BoundaryGrowthReport boundary_growth_check(const PotentialSolution& sol,
                                           double window = 0.05,
                                           double min_distance = 1e-3);

/// Uniform lower bound a_r >= -pi (n pi)^{1/n} for hyperbolic tubes with
/// lambda = 1, checked per radius.
struct CenterBoundEntry {
  double r;
  double a;
  double margin;  // a - bound
};
struct CenterBoundReport {
  double bound = 0.0;
  bool all_above = false;
  double worst_margin = 0.0;
  std::vector<CenterBoundEntry> entries;
  std::vector<std::pair<double, std::string>> failures;
};
CenterBoundReport hyperbolic_center_bound_check(int n,
                                                std::span<const double> radii,
                                                const ShootingConfig& cfg);

/// Center curvature criterion for hyperbolic tubes with lambda = n+1: the
/// quadratic center coefficient b = h''(0)/2 = e^{(n+1)a/n}/2 must exceed
/// (n-1)/(6(n+1)) for negative holomorphic sectional curvature near the
/// center.
struct CurvatureReport {
  double r;
  double a;
  double b;
  double threshold;
  bool negative_at_center;
};
struct CurvatureSweep {
  std::vector<CurvatureReport> reports;
  double epsilon_estimate = 0.0;  // (largest flagged r) - pi/2; NaN if none
  double resolution = 0.0;        // coarsest spacing of the sampled radii
  std::vector<std::pair<double, std::string>> failures;
};
CurvatureSweep curvature_center_sweep(int n, std::span<const double> radii,
                                      const ShootingConfig& cfg);

}  // namespace tubepot
