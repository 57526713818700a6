#include "tubepot/rescaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tubepot/ball_oracle.hpp"
#include "tubepot/errors.hpp"
#include "tubepot/ode_engine.hpp"
#include "tubepot/quadrature.hpp"

namespace tubepot {

RescaledPotential rescale(const PotentialSolution& base) {
  if (base.lambda != 1.0)
    throw InconsistentInputError("rescale requires a lambda = 1 solution");
  if (base.grid.empty())
    throw InconsistentInputError("rescale requires a nonempty grid");

  const int n = base.space.n;
  const double factor = std::exp(-base.a / n);
  RescaledPotential out;
  out.base = base;
  out.effective_lambda = std::exp(base.a / n);
  out.grid.u = base.grid.u;
  out.grid.h.resize(base.grid.size());
  out.grid.h1.resize(base.grid.size());
  out.grid.h2.resize(base.grid.size());
  for (std::size_t i = 0; i < base.grid.size(); ++i) {
    out.grid.h[i] = factor * (base.grid.h[i] - base.a);
    out.grid.h1[i] = factor * base.grid.h1[i];
    out.grid.h2[i] = factor * base.grid.h2[i];
  }

  // Transformed equation defect: K''(K')^{n-1} = exp(e^{a/n} K) D.
  double worst = 0.0;
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    const double forcing = std::exp(out.effective_lambda * out.grid.h[i]) *
                           density(base.space, out.grid.u[i]);
    const double lhs = out.grid.h2[i] * std::pow(out.grid.h1[i], n - 1);
    worst = std::max(worst, std::abs(lhs - forcing) / (1.0 + forcing));
  }
  if (!(worst < 1e-8))
    throw InconsistentInputError(
        "rescaled potential violates its equation; defect " +
        format_double(worst));
  return out;
}

namespace {

std::vector<double> normalize_probes(std::vector<double> probes) {
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  if (probes.empty() || probes.front() > 0.0)
    probes.insert(probes.begin(), 0.0);
  if (probes.front() < 0.0)
    throw std::domain_error("abscissae must be nonnegative");
  return probes;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return xs;
}

}  // namespace

RicciFlatPotential ricci_flat_potential(const SpaceSpec& space,
                                        std::vector<double> probes) {
  if (space.family == Family::RealHyperbolic)
    throw UnsupportedFamilyError(
        "the Ricci-flat limit is not defined over the hyperbolic family");
  probes = normalize_probes(std::move(probes));
  if (probes.size() < 2)
    throw std::domain_error("need at least one positive abscissa");

  const int n = space.n;
  const double inv_n = 1.0 / n;
  std::function<double(double)> n_density = [&space, n](double x) {
    return n * density(space, x);
  };

  RicciFlatPotential out;
  out.space = space;
  GridFunction& g = out.grid;

  const std::size_t m = probes.size();
  std::vector<double> cum(m, 0.0);  // int_0^{t_j} n D
  for (std::size_t j = 1; j < m; ++j)
    cum[j] = cum[j - 1] +
             adaptive_simpson(n_density, probes[j - 1], probes[j], 1e-13);

  double K = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double t = probes[j];
    const double Kp = std::pow(std::max(cum[j], 0.0), inv_n);
    double Kpp;
    if (t == 0.0) {
      Kpp = 1.0;  // all families have D ~ t^{n-1} with unit slope factor
    } else if (n == 1) {
      Kpp = density(space, t);
    } else {
      Kpp = std::pow(density_nth_root(space, t) / Kp, n - 1);
    }
    if (j > 0) {
      const double base = cum[j - 1];
      const double left = probes[j - 1];
      std::function<double(double)> K_prime = [&](double x) {
        const double I =
            base + adaptive_simpson(n_density, left, x, 1e-14);
        return std::pow(std::max(I, 0.0), inv_n);
      };
      K += adaptive_simpson(K_prime, left, t, 1e-13);
    }
    g.push_back(t, K, Kp, Kpp);
  }
  return out;
}

RicciFlatPotential ricci_flat_potential(const SpaceSpec& space, double t_max,
                                        int n_points) {
  if (!(t_max > 0.0)) throw std::domain_error("t_max must be positive");
  if (n_points < 2) throw std::domain_error("need at least two grid points");
  return ricci_flat_potential(space, linspace(0.0, t_max, n_points));
}

ExhaustionResult exhaustion_experiment(const SpaceSpec& space,
                                       std::span<const double> radii,
                                       double window,
                                       const ShootingConfig& cfg,
                                       int n_probes) {
  if (radii.empty()) throw std::domain_error("need at least one radius");
  if (!std::is_sorted(radii.begin(), radii.end()))
    throw std::domain_error("radii must be sorted ascending");
  if (!(window > 0.0) || !(window < radii.front()))
    throw std::domain_error("probe window must lie inside the smallest tube");
  if (n_probes < 2) throw std::domain_error("need at least two probes");

  const std::vector<double> probes = linspace(0.0, window, n_probes);
  ExhaustionResult out{.report = {}, .members = {},
                       .limit = ricci_flat_potential(space, probes),
                       .failures = {}};

  for (double r : radii) {
    try {
      PotentialSolution sol = solve_potential(space, 1.0, r, cfg, probes);
      out.members.push_back(rescale(sol));
      out.report.radii.push_back(r);
    } catch (const std::exception& e) {
      out.failures.emplace_back(r, e.what());
    }
  }

  auto member_at = [&](const RescaledPotential& m, double p, int deriv) {
    const long idx = find_node(m.grid, p);
    if (idx >= 0) {
      if (deriv == 0) return m.grid.h[idx];
      if (deriv == 1) return m.grid.h1[idx];
      return m.grid.h2[idx];
    }
    if (deriv == 0) return eval_h(m.grid, p);
    if (deriv == 1) return eval_h1(m.grid, p);
    return eval_h2(m.grid, p);
  };

  bool ordered = true;
  const double slack = 1e-7;
  for (std::size_t i = 0; i < out.members.size(); ++i) {
    double gap = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t j = 0; j < probes.size(); ++j) {
      const double p = probes[j];
      const double K = out.limit.grid.h[j];
      const double Kr = member_at(out.members[i], p, 0);
      gap = std::max(gap, std::abs(Kr - K));
      g1 = std::max(g1, std::abs(member_at(out.members[i], p, 1) -
                                 out.limit.grid.h1[j]));
      g2 = std::max(g2, std::abs(member_at(out.members[i], p, 2) -
                                 out.limit.grid.h2[j]));
      // Ordering chain 0 <= K <= K_r <= K_s for s < r.
      if (K < -1e-12 || Kr < K - slack) ordered = false;
      if (i > 0 && Kr > member_at(out.members[i - 1], p, 0) + slack)
        ordered = false;
    }
    out.report.sup_gap.push_back(gap);
    out.report.gap_d1.push_back(g1);
    out.report.gap_d2.push_back(g2);
    if (i > 0 &&
        out.report.sup_gap[i] > out.report.sup_gap[i - 1] * (1.0 + 1e-12))
      ordered = false;
  }
  out.report.monotone_ok = ordered;
  return out;
}

ConvergenceReport ball_exhaustion_check(int n, std::span<const double> radii,
                                        std::span<const double> z_probes) {
  if (n < 1) throw std::domain_error("complex dimension must be >= 1");
  if (radii.empty()) throw std::domain_error("need at least one radius");
  if (!std::is_sorted(radii.begin(), radii.end()))
    throw std::domain_error("radii must be sorted ascending");
  for (double z : z_probes)
    if (!(z >= 0.0) || !(z < radii.front()))
      throw std::domain_error("probes must satisfy 0 <= |z| < min radius");

  ConvergenceReport rep;
  rep.monotone_ok = true;
  std::vector<double> prev_wt(z_probes.size(), 0.0);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    double gap = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t j = 0; j < z_probes.size(); ++j) {
      const double z = z_probes[j];
      const double z2 = z * z;
      const double wt = ball::w_tilde(r, z2);
      gap = std::max(gap, std::abs(wt - z2));
      // gradient component limit is conj(z_i): |grad| deviation collapses to
      // |z|^3 / (r^2 - |z|^2) by unitary invariance
      g1 = std::max(g1, std::abs(ball::gradient_norm(r, z2) - z));
      const ball::HessianEigs eig = ball::hessian_eigenvalues(r, z2);
      g2 = std::max(g2, std::max(std::abs(eig.tangential - 1.0),
                                 std::abs(eig.radial - 1.0)));
      if (i > 0 && z2 > 0.0 && !(wt < prev_wt[j])) rep.monotone_ok = false;
      prev_wt[j] = wt;
    }
    rep.radii.push_back(r);
    rep.sup_gap.push_back(gap);
    rep.gap_d1.push_back(g1);
    rep.gap_d2.push_back(g2);
    if (i > 0 && rep.sup_gap[i] > rep.sup_gap[i - 1] * (1.0 + 1e-12))
      rep.monotone_ok = false;
  }
  return rep;
}

}  // namespace tubepot
