#include "tubepot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tubepot/errors.hpp"
#include "tubepot/ode_engine.hpp"
#include "tubepot/quadrature.hpp"

namespace tubepot {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;

// Integrates sqrt(h'') over [0, limits...] where h'' is re-evaluated from
// the equation through the grid's Hermite interpolant, so refinement between
// nodes stays consistent with the solution.
std::vector<double> sqrt_h2_cumulative(const SpaceSpec& space, double lambda,
                                       const GridFunction& g,
                                       std::span<const double> limits) {
  for (std::size_t i = 1; i < limits.size(); ++i)
    if (!(limits[i] > limits[i - 1]))
      throw std::domain_error("integration limits must increase");
  if (!limits.empty() && limits.back() > g.u.back() * (1.0 + 1e-15))
    throw InsufficientGridError("grid does not extend to the last limit");

  std::function<double(double)> integrand = [&](double x) {
    if (x <= 0.0) return std::sqrt(g.h2.front());
    x = std::min(x, g.u.back());
    const long idx = find_node(g, x);
    double hh, d1;
    if (idx >= 0) {
      hh = g.h[idx];
      d1 = g.h1[idx];
    } else {
      hh = eval_h(g, x);
      d1 = std::max(eval_h1(g, x), 0.0);
    }
    return std::sqrt(second_derivative(space, lambda, x, hh, d1));
  };

  std::vector<double> out;
  out.reserve(limits.size());
  double acc = 0.0;
  double from = 0.0;
  for (double to : limits) {
    while (from < to) {
      // split panels at grid knots so the interpolant stays smooth inside
      auto it = std::upper_bound(g.u.begin(), g.u.end(), from);
      const double stop =
          (it != g.u.end() && *it < to) ? *it : to;
      acc += adaptive_simpson(integrand, from, stop,
                              1e-10 * std::max(1.0, std::abs(acc)));
      from = stop;
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace

CompletenessReport completeness_length(const PotentialSolution& sol,
                                       std::vector<double> cutoffs) {
  if (cutoffs.empty()) throw std::domain_error("need at least one cutoff");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > 0.0) || !(cutoffs[i] < sol.r))
      throw std::domain_error("cutoffs must lie in (0, r)");
    if (i > 0 && !(cutoffs[i] < cutoffs[i - 1]))
      throw std::domain_error("cutoffs must decrease");
  }

  std::vector<double> limits(cutoffs.size());
  for (std::size_t i = 0; i < cutoffs.size(); ++i)
    limits[i] = sol.r - cutoffs[i];

  const std::vector<double> raw =
      sqrt_h2_cumulative(sol.space, sol.lambda, sol.grid, limits);

  CompletenessReport rep;
  rep.cutoffs = std::move(cutoffs);
  rep.lengths.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    rep.lengths[i] = kInvSqrt2 * raw[i];

  if (rep.cutoffs.size() >= 2) {
    // least-squares slope of L against log(1/delta)
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double m = static_cast<double>(rep.cutoffs.size());
    for (std::size_t i = 0; i < rep.cutoffs.size(); ++i) {
      const double x = std::log(1.0 / rep.cutoffs[i]);
      sx += x;
      sy += rep.lengths[i];
      sxx += x * x;
      sxy += x * rep.lengths[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom > 0.0) {
      rep.log_slope = (m * sxy - sx * sy) / denom;
      rep.log_slope_defined = true;
    }
  }
  return rep;
}

std::vector<double> ricci_flat_completeness(const RicciFlatPotential& K,
                                            std::span<const double> t_points) {
  std::vector<double> limits;
  std::vector<std::size_t> where;
  std::vector<double> out(t_points.size(), 0.0);
  for (std::size_t i = 0; i < t_points.size(); ++i) {
    const double t = t_points[i];
    if (!(t >= 0.0)) throw std::domain_error("abscissae must be nonnegative");
    if (t > 0.0) {
      if (!limits.empty() && !(t > limits.back()))
        throw std::domain_error("abscissae must increase");
      limits.push_back(t);
      where.push_back(i);
    }
  }
  const std::vector<double> raw =
      sqrt_h2_cumulative(K.space, 0.0, K.grid, limits);
  for (std::size_t j = 0; j < raw.size(); ++j)
    out[where[j]] = kInvSqrt2 * raw[j];
  return out;
}

BoundaryGrowthReport boundary_growth_check(const PotentialSolution& sol,
                                           double window,
                                           double min_distance) {
  BoundaryGrowthReport rep;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  const double r = sol.achieved_radius;
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    const double dist = r - sol.grid.u[i];
    if (dist < min_distance || dist > window) continue;
    const double ratio = std::sqrt(sol.grid.h2[i]) * dist;
    rep.worst_ratio = std::min(rep.worst_ratio, ratio);
    ++rep.checked;
    if (!(ratio > 1.0)) rep.ok = false;
  }
  if (rep.checked == 0) rep.worst_ratio = 0.0;
  return rep;
}

CenterBoundReport hyperbolic_center_bound_check(int n,
                                                std::span<const double> radii,
                                                const ShootingConfig& cfg) {
  if (n < 1) throw std::domain_error("dimension must be >= 1");
  const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, n);
  CenterBoundReport rep;
  rep.bound = -kPi * std::pow(n * kPi, 1.0 / n);
  rep.worst_margin = std::numeric_limits<double>::infinity();
  rep.all_above = true;
  for (double r : radii) {
    try {
      const PotentialSolution sol = solve_potential(space, 1.0, r, cfg);
      const double margin = sol.a - rep.bound;
      rep.entries.push_back({r, sol.a, margin});
      rep.worst_margin = std::min(rep.worst_margin, margin);
      if (!(margin > 0.0)) rep.all_above = false;
    } catch (const std::exception& e) {
      rep.failures.emplace_back(r, e.what());
      rep.all_above = false;
    }
  }
  if (rep.entries.empty()) rep.worst_margin = 0.0;
  return rep;
}

CurvatureSweep curvature_center_sweep(int n, std::span<const double> radii,
                                      const ShootingConfig& cfg) {
  if (n < 1) throw std::domain_error("dimension must be >= 1");
  const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, n);
  const double lambda = n + 1.0;
  const double threshold = (n - 1.0) / (6.0 * (n + 1.0));

  CurvatureSweep sweep;
  sweep.epsilon_estimate = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < radii.size(); ++i)
    sweep.resolution = std::max(sweep.resolution, radii[i] - radii[i - 1]);

  double largest_flagged = std::numeric_limits<double>::quiet_NaN();
  for (double r : radii) {
    try {
      const PotentialSolution sol = solve_potential(space, lambda, r, cfg);
      const double b = 0.5 * std::exp(lambda * sol.a / n);
      const bool flag = b > threshold;
      sweep.reports.push_back({r, sol.a, b, threshold, flag});
      if (flag && !(largest_flagged >= r)) largest_flagged = r;
    } catch (const std::exception& e) {
      sweep.failures.emplace_back(r, e.what());
    }
  }
  if (!std::isnan(largest_flagged))
    sweep.epsilon_estimate = largest_flagged - 0.5 * kPi;
  return sweep;
}

}  // namespace tubepot
