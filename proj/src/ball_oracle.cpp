#include "tubepot/ball_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tubepot::ball {

namespace {

void check_admissible(double r, double z_norm_sq) {
  if (!(r > 0.0)) throw std::domain_error("ball radius must be positive");
  if (!(z_norm_sq >= 0.0) || !(z_norm_sq < r * r))
    throw std::domain_error("|z|^2 must lie in [0, r^2)");
}

void check_dim(int n) {
  if (n < 1) throw std::domain_error("complex dimension must be >= 1");
}

}  // namespace

double center_value(double r, int n) {
  check_dim(n);
  check_admissible(r, 0.0);
  return -2.0 * n / (n + 1.0) * std::log(r);
}

double w_potential(double r, int n, double z_norm_sq) {
  check_dim(n);
  check_admissible(r, z_norm_sq);
  return -std::log(r * r - z_norm_sq) + 2.0 / (n + 1.0) * std::log(r);
}

double w_tilde(double r, double z_norm_sq) {
  check_admissible(r, z_norm_sq);
  const double r2 = r * r;
  // -r^2 log1p(-|z|^2/r^2) keeps full precision when |z| << r
  return -r2 * std::log1p(-z_norm_sq / r2);
}

double dw_tilde_dr(double r, double z_norm_sq) {
  check_admissible(r, z_norm_sq);
  const double r2 = r * r;
  return -2.0 * r * std::log1p(-z_norm_sq / r2) -
         2.0 * r * z_norm_sq / (r2 - z_norm_sq);
}

double gradient_norm(double r, double z_norm_sq) {
  check_admissible(r, z_norm_sq);
  const double r2 = r * r;
  return r2 * std::sqrt(z_norm_sq) / (r2 - z_norm_sq);
}

HessianEigs hessian_eigenvalues(double r, double z_norm_sq) {
  check_admissible(r, z_norm_sq);
  const double r2 = r * r;
  const double alpha = r2 / (r2 - z_norm_sq);
  const double beta = r2 / ((r2 - z_norm_sq) * (r2 - z_norm_sq));
  return {alpha, alpha + beta * z_norm_sq};
}

double ma_residual(double r, int n, double z_norm_sq) {
  check_dim(n);
  const HessianEigs eig = hessian_eigenvalues(r, z_norm_sq);
  double det = eig.radial;
  for (int i = 0; i < n - 1; ++i) det *= eig.tangential;
  const double rhs = std::exp((n + 1.0) * w_tilde(r, z_norm_sq) / (r * r));
  return std::abs(det - rhs) / rhs;
}

BallPotentialEval evaluate(double r, int n, double z_norm_sq) {
  return {r,
          n,
          z_norm_sq,
          w_potential(r, n, z_norm_sq),
          w_tilde(r, z_norm_sq),
          gradient_norm(r, z_norm_sq),
          hessian_eigenvalues(r, z_norm_sq)};
}

std::vector<double> hessian_dense(double r, int n, double z_norm_sq) {
  check_dim(n);
  check_admissible(r, z_norm_sq);
  const double r2 = r * r;
  const double denom = (r2 - z_norm_sq) * (r2 - z_norm_sq);
  const double s = std::sqrt(z_norm_sq);  // z = (s, 0, ..., 0)
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double zi = i == 0 ? s : 0.0;
      const double zj = j == 0 ? s : 0.0;
      const double delta = i == j ? 1.0 : 0.0;
      m[static_cast<std::size_t>(i) * n + j] =
          (delta * r2 * (r2 - z_norm_sq) + r2 * zi * zj) / denom;
    }
  }
  return m;
}

double det_dense(std::vector<double> m, int n) {
  if (static_cast<int>(m.size()) != n * n)
    throw std::invalid_argument("matrix size mismatch");
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::abs(m[row * n + col]) > std::abs(m[piv * n + col])) piv = row;
    if (m[piv * n + col] == 0.0) return 0.0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m[piv * n + j], m[col * n + j]);
      det = -det;
    }
    det *= m[col * n + col];
    for (int row = col + 1; row < n; ++row) {
      const double f = m[row * n + col] / m[col * n + col];
      for (int j = col; j < n; ++j) m[row * n + j] -= f * m[col * n + j];
    }
  }
  return det;
}

}  // namespace tubepot::ball
