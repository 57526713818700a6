#pragma once

#include <vector>

namespace tubepot::ball {

/// Center value a_r = -2n/(n+1) log r of the ball potential.
double center_value(double r, int n);

/// w^r(z) = -log(r^2 - |z|^2) + 2/(n+1) log r, the potential of the complete
/// metric with Ricci constant -(n+1) on the radius-r ball.
double w_potential(double r, int n, double z_norm_sq);

/// w-tilde^r(z) = r^2 log(r^2 / (r^2 - |z|^2)) >= 0, the member of the
/// rescaled family with Ricci constant -(n+1)/r^2; equals r^2 (w^r - a_r).
double w_tilde(double r, double z_norm_sq);

/// d/dr of w-tilde at fixed z: 2r log(r^2/(r^2-|z|^2)) - 2r|z|^2/(r^2-|z|^2),
/// nonpositive everywhere (the family decreases in r pointwise).
double dw_tilde_dr(double r, double z_norm_sq);

/// Norm of the holomorphic gradient of w-tilde: r^2 |z| / (r^2 - |z|^2).
double gradient_norm(double r, double z_norm_sq);

/// The complex Hessian of w-tilde is alpha I + beta zbar z^T with
/// alpha = r^2/(r^2-|z|^2) and beta = r^2/(r^2-|z|^2)^2, so its spectrum is
/// {alpha (tangential, multiplicity n-1), alpha + beta |z|^2 (radial)}.
struct HessianEigs {
  double tangential;
  double radial;
};
HessianEigs hessian_eigenvalues(double r, double z_norm_sq);

/// Relative defect of det(Hessian) = e^{(n+1) w-tilde / r^2}, the
/// Monge-Ampere identity of the family, computed via the eigenvalue
/// structure. Pure roundoff for admissible inputs.
double ma_residual(double r, int n, double z_norm_sq);

struct BallPotentialEval {
  double r;
  int n;
  double z_norm_sq;
  double w;
  double w_tilde;
  double gradient_norm;
  HessianEigs hessian_eigs;
};
BallPotentialEval evaluate(double r, int n, double z_norm_sq);

// Dense cross-check path (n <= 8): materializes the n x n Hessian at
// z = (|z|, 0, ..., 0) and takes a pivoted-LU determinant, validating the
// eigenvalue shortcut. Intended for tests.
std::vector<double> hessian_dense(double r, int n, double z_norm_sq);
double det_dense(std::vector<double> m, int n);

}  // namespace tubepot::ball
