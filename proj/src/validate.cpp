#include "tubepot/validate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "tubepot/analysis.hpp"
#include "tubepot/ball_oracle.hpp"
#include "tubepot/errors.hpp"
#include "tubepot/ode_engine.hpp"
#include "tubepot/rescaling.hpp"
#include "tubepot/shooting.hpp"

namespace tubepot::validation {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Pinned from tests/calibration/calibration.json (independent RK45 run):
// observed sup|K_16 - K| = 0.004282 on [0, 1.5] for the Euclidean n=2
// exhaustion; threshold carries ~40% headroom.
constexpr double kEuclideanFinalGapThreshold = 0.006;

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return xs;
}

struct Checker {
  std::vector<CheckResult> results;

  void run(int id, const std::string& title,
           const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult res;
    res.id = id;
    res.title = title;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [ok, detail] = body();
      res.pass = ok;
      res.detail = detail;
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    results.push_back(std::move(res));
  }
};

ShootingConfig default_shooting() { return ShootingConfig{}; }

}  // namespace

std::vector<CheckResult> run_validation_suite() {
  Checker c;

  c.run(1, "hyperbolic blow-up solve matches -log cos u", [] {
    const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
    const std::vector<double> probes = linspace(0.0, 1.5, 151);
    const PotentialSolution sol =
        solve_potential(space, 3.0, 0.5 * kPi, default_shooting(), probes);
    double worst = 0.0;
    for (double p : probes) {
      const long i = find_node(sol.grid, p);
      worst = std::max(worst,
                       std::abs(sol.grid.h[i] + std::log(std::cos(p))));
    }
    const bool ok = std::abs(sol.a) < 1e-4 && worst < 1e-4;
    return std::pair{ok, fmt("|a| = %.3g, sup error = %.3g", std::abs(sol.a),
                             worst)};
  });

  c.run(2, "one-dimensional solve matches -2 log(cos u / sqrt 2)", [] {
    const SpaceSpec space = SpaceSpec::make(Family::Euclidean, 1);
    const std::vector<double> probes = linspace(0.0, 1.4, 141);
    const PotentialSolution sol =
        solve_potential(space, 1.0, 0.5 * kPi, default_shooting(), probes);
    double worst = 0.0;
    for (double p : probes) {
      const long i = find_node(sol.grid, p);
      const double exact = -2.0 * std::log(std::cos(p) / std::sqrt(2.0));
      worst = std::max(worst, std::abs(sol.grid.h[i] - exact));
    }
    const double a_err = std::abs(sol.a - std::log(2.0));
    const bool ok = a_err < 1e-4 && worst < 1e-4;
    return std::pair{ok, fmt("|a - log 2| = %.3g, sup error = %.3g", a_err,
                             worst)};
  });

  c.run(3, "Euclidean Ricci-flat quadrature gives t^2/2", [] {
    double worst = 0.0;
    for (int n : {1, 2, 3}) {
      const RicciFlatPotential K =
          ricci_flat_potential(SpaceSpec::make(Family::Euclidean, n), 10.0, 501);
      for (std::size_t i = 0; i < K.grid.size(); ++i)
        worst = std::max(worst, std::abs(K.grid.h[i] -
                                         0.5 * K.grid.u[i] * K.grid.u[i]));
    }
    return std::pair{worst < 1e-10, fmt("sup error = %.3g", worst)};
  });

  c.run(4, "sphere Ricci-flat quadrature matches 4(cosh(t/2)-1)", [] {
    const RicciFlatPotential K =
        ricci_flat_potential(SpaceSpec::make(Family::RoundSphere, 2), 1.0, 101);
    const double got = K.grid.h.back();
    const double want = 4.0 * (std::cosh(0.5) - 1.0);
    const double err = std::abs(got - want);
    return std::pair{err < 1e-8, fmt("|K(1) - %.12g| = %.3g", want, err)};
  });

  c.run(5, "sphere rescaling: unit center curvature and ordered family", [] {
    const SpaceSpec space = SpaceSpec::make(Family::RoundSphere, 2);
    const std::vector<double> radii{2.0, 3.0, 4.0, 5.0};
    const ExhaustionResult ex =
        exhaustion_experiment(space, radii, 1.9, default_shooting(), 50);
    if (!ex.failures.empty())
      return std::pair{false, std::string("solver failure at r=") +
                                  format_double(ex.failures.front().first)};
    double worst_center = 0.0;
    for (const RescaledPotential& m : ex.members)
      worst_center = std::max(worst_center, std::abs(m.grid.h2.front() - 1.0));
    bool strictly_decreasing = true;
    for (std::size_t i = 1; i < ex.report.sup_gap.size(); ++i)
      if (!(ex.report.sup_gap[i] < ex.report.sup_gap[i - 1]))
        strictly_decreasing = false;
    const bool ok = worst_center < 1e-6 && ex.report.monotone_ok &&
                    strictly_decreasing;
    return std::pair{
        ok, fmt("max |K_r''(0)-1| = %.3g, ordered=%.0f, gaps decreasing=%.0f",
                worst_center, ex.report.monotone_ok ? 1.0 : 0.0,
                strictly_decreasing ? 1.0 : 0.0)};
  });

  c.run(6, "hyperbolic comparison: smaller tubes carry larger potentials", [] {
    const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
    const std::vector<double> radii{1.0, 2.0, 3.0};
    const std::vector<double> probes = linspace(0.0, 0.95, 96);
    const std::vector<SweepEntry> sweep =
        family_sweep(space, 1.0, radii, default_shooting(), probes);
    double worst = -1e300;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
      if (!sweep[i].solution || !sweep[i - 1].solution)
        return std::pair{false, std::string("solver failure in sweep")};
      for (double p : probes) {
        const long ia = find_node(sweep[i].solution->grid, p);
        const long ib = find_node(sweep[i - 1].solution->grid, p);
        worst = std::max(worst, sweep[i].solution->grid.h[ia] -
                                    sweep[i - 1].solution->grid.h[ib]);
      }
    }
    return std::pair{worst < 1e-3,
                     fmt("max(h_larger - h_smaller) = %.3g (slack 1e-3)",
                         worst)};
  });

  c.run(7, "hyperbolic center values respect the uniform lower bound", [] {
    const std::vector<double> radii{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.1};
    std::string detail;
    bool ok = true;
    for (int n : {2, 3}) {
      const CenterBoundReport rep =
          hyperbolic_center_bound_check(n, radii, default_shooting());
      if (!rep.failures.empty() || !rep.all_above) ok = false;
      for (std::size_t i = 1; i < rep.entries.size(); ++i)
        if (!(rep.entries[i].a < rep.entries[i - 1].a)) ok = false;
      detail += fmt("n=%.0f: bound %.6g, worst margin %.4g; ",
                    static_cast<double>(n), rep.bound, rep.worst_margin);
    }
    return std::pair{ok, detail};
  });

  c.run(8, "ball family: Monge-Ampere identity and flat limit", [] {
    std::mt19937 rng(20240612u);
    std::uniform_real_distribution<double> radius(0.5, 50.0);
    std::uniform_real_distribution<double> fill(0.0, 0.98);
    std::uniform_int_distribution<int> dim(1, 4);
    double worst_residual = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double r = radius(rng);
      const double z2 = fill(rng) * r * r;
      worst_residual =
          std::max(worst_residual, ball::ma_residual(r, dim(rng), z2));
    }
    const double wt_err =
        std::abs(ball::w_tilde(2.0, 1.0) - 1.1507282898071236);
    const ConvergenceReport rep = ball_exhaustion_check(
        2, std::vector<double>{10.0, 100.0, 1000.0}, std::vector<double>{1.0});
    bool gaps_decreasing = rep.monotone_ok;
    for (std::size_t i = 1; i < rep.sup_gap.size(); ++i)
      if (!(rep.sup_gap[i] < rep.sup_gap[i - 1])) gaps_decreasing = false;
    // series value |z|^4/(2 r^2) of the final gap at r=1000, |z|=1
    const double series = 1.0 / (2.0 * 1000.0 * 1000.0);
    const double final_gap_err = std::abs(rep.sup_gap.back() - series);
    const bool ok = worst_residual < 1e-12 && wt_err < 1e-12 &&
                    gaps_decreasing && final_gap_err < 1e-5;
    return std::pair{ok, fmt("max residual %.3g, w-tilde err %.3g, "
                             "|final gap - series| = %.3g",
                             worst_residual, wt_err, final_gap_err)};
  });

  c.run(9, "completeness length diverges logarithmically at the boundary", [] {
    const SpaceSpec space = SpaceSpec::make(Family::RealHyperbolic, 2);
    const PotentialSolution sol =
        solve_potential(space, 3.0, 0.5 * kPi, default_shooting());
    const CompletenessReport rep =
        completeness_length(sol, {1e-2, 1e-3, 1e-4});
    const double l_err = std::abs(rep.lengths[1] - 5.3746);
    bool increasing = true;
    for (std::size_t i = 1; i < rep.lengths.size(); ++i)
      if (!(rep.lengths[i] > rep.lengths[i - 1])) increasing = false;
    const BoundaryGrowthReport growth = boundary_growth_check(sol);
    const bool ok = l_err < 0.01 && increasing && rep.log_slope_defined &&
                    rep.log_slope > 0.0 && growth.ok && growth.checked > 0;
    return std::pair{ok, fmt("|L(1e-3) - 5.3746| = %.3g, log slope %.4g, "
                             "boundary ratio min %.6g",
                             l_err, rep.log_slope, growth.worst_ratio)};
  });

  c.run(10, "curvature criterion holds through r = pi/2", [] {
    std::vector<double> radii;
    for (int i = 0; i <= 65; ++i) radii.push_back(1.0 + 0.01 * i);
    const CurvatureSweep sweep =
        curvature_center_sweep(2, radii, default_shooting());
    if (!sweep.failures.empty())
      return std::pair{false, std::string("solver failure in sweep")};
    bool below_ok = true;
    for (const CurvatureReport& rep : sweep.reports)
      if (rep.r <= 0.5 * kPi && !rep.negative_at_center) below_ok = false;
    const CurvatureSweep at_half =
        curvature_center_sweep(2, std::vector<double>{0.5 * kPi},
                               default_shooting());
    const double b = at_half.reports.front().b;
    const double b_err = std::abs(b - 0.5);
    const bool ok = below_ok && sweep.epsilon_estimate >= 0.0 && b_err < 1e-4 &&
                    at_half.reports.front().threshold == 1.0 / 18.0;
    return std::pair{ok, fmt("epsilon estimate %.4g, |b(pi/2) - 1/2| = %.3g",
                             sweep.epsilon_estimate, b_err)};
  });

  c.run(11, "Euclidean exhaustion converges to the flat potential", [] {
    const SpaceSpec space = SpaceSpec::make(Family::Euclidean, 2);
    const std::vector<double> radii{2.0, 4.0, 8.0, 16.0};
    const ExhaustionResult ex =
        exhaustion_experiment(space, radii, 1.5, default_shooting(), 151);
    if (!ex.failures.empty())
      return std::pair{false, std::string("solver failure at r=") +
                                  format_double(ex.failures.front().first)};
    bool strictly_decreasing = true;
    for (std::size_t i = 1; i < ex.report.sup_gap.size(); ++i)
      if (!(ex.report.sup_gap[i] < ex.report.sup_gap[i - 1]))
        strictly_decreasing = false;
    const double final_gap = ex.report.sup_gap.back();
    const bool ok = strictly_decreasing &&
                    final_gap < kEuclideanFinalGapThreshold;
    return std::pair{ok, fmt("final gap %.4g (threshold %.4g), decreasing=%.0f",
                             final_gap, kEuclideanFinalGapThreshold,
                             strictly_decreasing ? 1.0 : 0.0)};
  });

  return c.results;
}

std::string to_stable_json(const std::vector<CheckResult>& results) {
  std::string out = "[";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const CheckResult& r = results[i];
    if (i) out += ",";
    out += "\n  {\"id\": " + std::to_string(r.id) + ", \"title\": \"" +
           r.title + "\", \"pass\": " + (r.pass ? "true" : "false") +
           ", \"detail\": \"" + r.detail + "\"}";
  }
  return out + "\n]\n";
}

std::string to_table(const std::vector<CheckResult>& results) {
  std::string out;
  for (const CheckResult& r : results) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%s  %2d  %-58s  %7.2fs  %s\n",
                  r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                  r.detail.c_str());
    out += buf;
  }
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

}  // namespace tubepot::validation
