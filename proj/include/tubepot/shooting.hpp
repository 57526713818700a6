#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tubepot/ode_engine.hpp"

namespace tubepot {

struct ShootingConfig {
  IntegratorConfig integrator;  // u_cap == 0 means choose automatically
  double a_lo = -20.0;
  double a_hi = 5.0;
  double radius_tol = 1e-6;
  int max_iters = 200;
};

/// A solved boundary-blow-up problem: the potential on [0, r) whose value
/// diverges at the tube boundary, sampled with both derivatives.
struct PotentialSolution {
  SpaceSpec space;
  double lambda = 1.0;
  double r = 0.0;                // prescribed tube radius
  double a = 0.0;                // solved center value h(0)
  GridFunction grid;
  double achieved_radius = 0.0;  // blow-up abscissa of the accepted trajectory
};

/// The shooting map: blow-up radius of the trajectory with center value a,
/// or nullopt when the integration reaches the cap without blowing up.
std::optional<double> radius_of(const SpaceSpec& space, double lambda,
                                double a, const ShootingConfig& cfg);

/// Finds the unique center value whose trajectory blows up at radius r, by
/// bisection over the strictly decreasing map a -> u_star(a). The bracket is
/// auto-expanded by doubling (a_lo down to -2000, a_hi up to +2000).
/// Iteration stops once |u_star - r| < radius_tol and the bracket width is
/// below radius_tol/4, which pins the returned a independently of the
/// starting bracket.
///
/// Requires lambda > 0 and 0 < r < r_max; lambda = 0 has no finite-radius
/// blow-up solution (the Ricci-flat potential comes from direct quadrature
/// instead).
PotentialSolution solve_potential(const SpaceSpec& space, double lambda,
                                  double r, const ShootingConfig& cfg,
                                  std::span<const double> probes = {});

struct SweepEntry {
  double r = 0.0;
  std::optional<PotentialSolution> solution;
  std::string error;  // empty on success
};

struct SweepOptions {
  bool warm_start = true;  // reuse a_i as the next upper bracket (sequential)
  int jobs = 1;            // parallel solves, only honored without warm start
};

/// Solves each radius in order. Per-radius failures are recorded in the
/// entry without aborting the sweep.
std::vector<SweepEntry> family_sweep(const SpaceSpec& space, double lambda,
                                     std::span<const double> radii,
                                     const ShootingConfig& cfg,
                                     std::span<const double> probes = {},
                                     const SweepOptions& opts = {});

}  // namespace tubepot
