#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tubepot/shooting.hpp"

namespace tubepot {

/// K_r = e^{-a/n}(h_r - a): the same tube metric renormalized so the center
/// value is 0 and the center second derivative is 1; its Ricci constant is
/// -e^{a/n}.
struct RescaledPotential {
  PotentialSolution base;     // lambda = 1 solution h_r
  GridFunction grid;          // K_r, K_r', K_r'' on the same abscissae
  double effective_lambda = 1.0;  // e^{a/n}
};

/// Applies the rescaling transform and verifies the transformed equation
/// defect stays below 1e-8 (throws InconsistentInputError otherwise).
/// Requires base.lambda == 1.
RescaledPotential rescale(const PotentialSolution& base);

/// The Ricci-flat radial potential K with K(0) = 0, obtained by direct
/// cumulative quadrature: K'(t) = (int_0^t n D)^{1/n}, K = int K', and
/// K'' = D/(K')^{n-1} with the center limit K''(0) = 1.
struct RicciFlatPotential {
  SpaceSpec space;
  GridFunction grid;
};

/// Quadrature route on an explicit abscissa set (0 is prepended when
/// missing). The real hyperbolic family is rejected: its tube radius is
/// finite and the flat limit lives on compact centers and Euclidean space
/// only.
RicciFlatPotential ricci_flat_potential(const SpaceSpec& space,
                                        std::vector<double> probes);
RicciFlatPotential ricci_flat_potential(const SpaceSpec& space, double t_max,
                                        int n_points);

/// Per-radius closeness of a convergent family to its limit over a probe
/// window. derivative gaps are carried as two aligned arrays.
struct ConvergenceReport {
  std::vector<double> radii;
  std::vector<double> sup_gap;
  std::vector<double> gap_d1;
  std::vector<double> gap_d2;
  bool monotone_ok = false;
};

struct ExhaustionResult {
  ConvergenceReport report;                 // surviving radii only
  std::vector<RescaledPotential> members;   // aligned with report.radii
  RicciFlatPotential limit;
  std::vector<std::pair<double, std::string>> failures;
};

/// Solves lambda = 1 at every radius, rescales, and compares against the
/// Ricci-flat quadrature limit at n_probes uniform points of [0, window].
/// monotone_ok records the full ordering chain 0 <= K <= K_r <= K_s (s < r)
/// together with nonincreasing sup gaps. Requires window < min(radii).
ExhaustionResult exhaustion_experiment(const SpaceSpec& space,
                                       std::span<const double> radii,
                                       double window,
                                       const ShootingConfig& cfg,
                                       int n_probes = 101);

/// Closed-form ball family check: gaps of w-tilde to |z|^2, of its gradient
/// to the flat one, and of the Hessian eigenvalues to 1, per radius over the
/// |z| probes. Probes must satisfy |z| < min(radii).
ConvergenceReport ball_exhaustion_check(int n, std::span<const double> radii,
                                        std::span<const double> z_probes);

}  // namespace tubepot
