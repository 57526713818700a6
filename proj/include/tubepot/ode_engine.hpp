#pragma once

#include <functional>
#include <span>

#include "tubepot/grid_function.hpp"
#include "tubepot/spaces.hpp"

namespace tubepot {

/// One radial Einstein problem: h''(h')^{n-1} = e^{lambda h} D(u) integrated
/// from the center value h(0) = a, h'(0) = 0. lambda = 0 selects the
/// Ricci-flat equation.
struct OdeProblem {
  SpaceSpec space;
  double lambda = 1.0;
  double a = 0.0;
};

struct IntegratorConfig {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double h_max_blowup = 40.0;  // potential threshold declaring blow-up
  double u_cap = 0.0;          // hard range limit; must be set > 0
  int max_steps = 2000000;
  double max_du = 0.05;        // keeps dense-output error ~1e-13
};

enum class StopReason { BlewUp, ReachedCap, StepLimit };

struct IntegrationOutcome {
  GridFunction grid;
  StopReason status = StopReason::ReachedCap;
  double u_star = 0.0;  // crossing of h with h_max_blowup; NaN unless BlewUp
};

/// h'' from the equation itself: e^{lambda h} D(u) / (h')^{n-1}, evaluated in
/// ratio form for n >= 2, with the center limit e^{lambda h / n} at u = 0.
double second_derivative(const SpaceSpec& space, double lambda, double u,
                         double h, double h1);

/// Integrates the regularized first-order system in (h, v), v = (h')^n, with
/// an embedded Dormand-Prince 5(4) pair. The returned grid holds all accepted
/// steps plus the requested probe points (strictly increasing `probes` in
/// (0, u_cap]), each carrying h, h', h''. Stops at the first of: h crossing
/// h_max_blowup (interpolated crossing recorded as u_star), u reaching u_cap,
/// or the step budget.
///
/// When e^{-lambda h_max_blowup/(n+1)} is below the resolvable distance to
/// the pole, the threshold crossing cannot be reached by stepping in double
/// precision; the integrator then completes the last stretch with the pole
/// asymptotics h ~ -(n+1)/lambda log(r - u) and still reports BlewUp.
///
/// Throws std::domain_error for invalid configs (including
/// u_cap > r_max(space)) and IntegrationDivergedError when the state leaves
/// the representable range away from a pole.
IntegrationOutcome integrate(const OdeProblem& problem,
                             const IntegratorConfig& cfg,
                             std::span<const double> probes = {});

/// Max over grid points of |h'' (h')^{n-1} - e^{lambda h} D(u)| /
/// (1 + e^{lambda h} D(u)): the relative equation defect of any sampled
/// solution. Grids of fewer than two points give 0. `density_override`, when
/// set, replaces D in the check (fault-injection hook).
double ode_residual(const SpaceSpec& space, double lambda,
                    const GridFunction& grid,
                    const std::function<double(double)>* density_override = nullptr);

}  // namespace tubepot
