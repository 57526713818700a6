#include "tubepot/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "tubepot/errors.hpp"

namespace tubepot {

namespace {

IntegratorConfig resolve_integrator(const SpaceSpec& space, double r,
                                    const IntegratorConfig& in) {
  IntegratorConfig cfg = in;
  if (cfg.u_cap <= 0.0)
    cfg.u_cap = std::min(space.r_max, std::max(1.5 * r, r + 1.0));
  if (cfg.u_cap <= r)
    throw std::domain_error("u_cap must exceed the target radius");
  return cfg;
}

std::optional<double> shoot_once(const SpaceSpec& space, double lambda,
                                 double a, const IntegratorConfig& icfg) {
  const IntegrationOutcome res = integrate({space, lambda, a}, icfg);
  switch (res.status) {
    case StopReason::BlewUp:
      return res.u_star;
    case StopReason::ReachedCap:
      return std::nullopt;
    case StopReason::StepLimit:
      throw ConvergenceError("integration step budget exhausted at a=" +
                                 format_double(a),
                             a);
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> radius_of(const SpaceSpec& space, double lambda,
                                double a, const ShootingConfig& cfg) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("radius_of requires lambda > 0");
  IntegratorConfig icfg = cfg.integrator;
  if (icfg.u_cap <= 0.0)
    icfg.u_cap = std::min(space.r_max, 20.0);
  return shoot_once(space, lambda, a, icfg);
}

PotentialSolution solve_potential(const SpaceSpec& space, double lambda,
                                  double r, const ShootingConfig& cfg,
                                  std::span<const double> probes) {
  if (!(lambda > 0.0))
    throw std::invalid_argument(
        "solve_potential requires lambda > 0; use ricci_flat_potential for "
        "the lambda = 0 equation");
  if (!(r > 0.0) || !(r < space.r_max))
    throw std::domain_error("radius must lie in (0, r_max)");
  if (!(cfg.a_lo < cfg.a_hi))
    throw std::invalid_argument("bracket must satisfy a_lo < a_hi");
  if (!(cfg.radius_tol > 0.0))
    throw std::invalid_argument("radius_tol must be positive");

  const IntegratorConfig icfg = resolve_integrator(space, r, cfg.integrator);
  auto u_star_of = [&](double a) { return shoot_once(space, lambda, a, icfg); };
  // nullopt (reached cap) counts as "blow-up beyond r".
  auto above = [&](const std::optional<double>& us) { return !us || *us > r; };

  double lo = cfg.a_lo, hi = cfg.a_hi;
  while (!above(u_star_of(lo))) {
    lo = lo >= -1.0 ? -2.0 : 2.0 * lo;
    if (lo < -2000.0)
      throw NoBracketError("no lower bracket down to a=-2000 for r=" +
                               format_double(r),
                           lo, hi);
  }
  while (above(u_star_of(hi))) {
    hi = hi <= 1.0 ? 2.0 : 2.0 * hi;
    if (hi > 2000.0)
      throw NoBracketError("no upper bracket up to a=+2000 for r=" +
                               format_double(r),
                           lo, hi);
  }

  double best_a = std::numeric_limits<double>::quiet_NaN();
  double best_gap = std::numeric_limits<double>::infinity();
  const double width_tol = 0.25 * cfg.radius_tol;

  for (int it = 0; it < cfg.max_iters; ++it) {
    const double mid = 0.5 * (lo + hi);
    const std::optional<double> us = u_star_of(mid);
    if (us && std::abs(*us - r) < best_gap) {
      best_gap = std::abs(*us - r);
      best_a = mid;
    }
    const double width = hi - lo;
    const double width_floor =
        4.0 * std::numeric_limits<double>::epsilon() *
        std::max({1.0, std::abs(lo), std::abs(hi)});
    if (us && std::abs(*us - r) < cfg.radius_tol &&
        (width < width_tol || width <= width_floor)) {
      PotentialSolution sol;
      sol.space = space;
      sol.lambda = lambda;
      sol.r = r;
      sol.a = mid;
      IntegrationOutcome final = integrate({space, lambda, mid}, icfg, probes);
      if (final.status != StopReason::BlewUp)
        throw ConvergenceError("accepted center value no longer blows up", mid);
      sol.grid = std::move(final.grid);
      sol.achieved_radius = final.u_star;
      return sol;
    }
    if (width <= width_floor)
      throw ConvergenceError(
          "bracket collapsed to machine precision without meeting radius_tol",
          best_a);
    (above(us) ? lo : hi) = mid;
  }
  throw ConvergenceError("bisection iteration budget exhausted for r=" +
                             format_double(r),
                         best_a);
}

std::vector<SweepEntry> family_sweep(const SpaceSpec& space, double lambda,
                                     std::span<const double> radii,
                                     const ShootingConfig& cfg,
                                     std::span<const double> probes,
                                     const SweepOptions& opts) {
  std::vector<SweepEntry> out(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) out[i].r = radii[i];

  auto solve_into = [&](std::size_t i, const ShootingConfig& c) {
    try {
      out[i].solution = solve_potential(space, lambda, radii[i], c, probes);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  };

  if (!opts.warm_start && opts.jobs > 1) {
    std::vector<std::future<void>> pending;
    std::size_t next = 0;
    while (next < radii.size() || !pending.empty()) {
      while (next < radii.size() &&
             pending.size() < static_cast<std::size_t>(opts.jobs)) {
        pending.push_back(std::async(std::launch::async, solve_into, next, cfg));
        ++next;
      }
      pending.front().get();
      pending.erase(pending.begin());
    }
    return out;
  }

  ShootingConfig c = cfg;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    solve_into(i, c);
    if (opts.warm_start && out[i].solution) {
      // a decreases in r, so the solved value brackets the next one above.
      c.a_hi = out[i].solution->a;
      c.a_lo = std::min(cfg.a_lo, c.a_hi - 1.0);
    }
  }
  return out;
}

}  // namespace tubepot
