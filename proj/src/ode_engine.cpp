#include "tubepot/ode_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tubepot/errors.hpp"

namespace tubepot {

namespace {

struct State {
  double h;
  double v;  // (h')^n
};

constexpr double kStepFloorScale = 1e-14;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Fifth-order weights minus the embedded fourth-order weights.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

class System {
 public:
  System(const SpaceSpec& space, double lambda)
      : space_(space), lambda_(lambda), n_(space.n) {}

  State rhs(double u, const State& y) const {
    const double v = std::max(y.v, 0.0);
    return {std::pow(v, 1.0 / n_),
            n_ * std::exp(lambda_ * y.h) * density(space_, u)};
  }

  double n() const { return n_; }
  double lambda() const { return lambda_; }
  const SpaceSpec& space() const { return space_; }

 private:
  SpaceSpec space_;
  double lambda_;
  double n_;
};

// Quintic Hermite for h across one accepted step; cubic Hermite for h'.
struct DenseStep {
  double u0, du;
  double h0, h1v0, h2v0;  // value, first, second derivative at the left node
  double hE, h1vE, h2vE;  // and at the right node

  double h(double t) const {
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    return h0 * (1.0 - 10 * t3 + 15 * t4 - 6 * t5) +
           du * h1v0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
           du * du * h2v0 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5) +
           hE * (10 * t3 - 15 * t4 + 6 * t5) +
           du * h1vE * (-4 * t3 + 7 * t4 - 3 * t5) +
           du * du * h2vE * (0.5 * t3 - t4 + 0.5 * t5);
  }

  double h1(double t) const {
    const double t2 = t * t, t3 = t2 * t;
    return h1v0 * (2 * t3 - 3 * t2 + 1) + du * h2v0 * (t3 - 2 * t2 + t) +
           h1vE * (-2 * t3 + 3 * t2) + du * h2vE * (t3 - t2);
  }
};

}  // namespace

double second_derivative(const SpaceSpec& space, double lambda, double u,
                         double h, double h1) {
  const int n = space.n;
  if (u <= 0.0) return std::exp(lambda * h / n);
  if (n == 1) return std::exp(lambda * h) * density(space, u);
  if (h1 <= 0.0) return std::exp(lambda * h / n);  // center limit form
  return std::exp(lambda * h) *
         std::pow(density_nth_root(space, u) / h1, n - 1);
}

IntegrationOutcome integrate(const OdeProblem& problem,
                             const IntegratorConfig& cfg,
                             std::span<const double> probes) {
  const SpaceSpec& space = problem.space;
  const int n = space.n;
  if (n < 1) throw std::domain_error("dimension must be >= 1");
  if (!(problem.lambda >= 0.0)) throw std::domain_error("lambda must be >= 0");
  if (!std::isfinite(problem.a)) throw std::domain_error("center value must be finite");
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) ||
      !(cfg.abs_tol > 0.0 && cfg.abs_tol < 1.0))
    throw std::domain_error("tolerances must lie in (0, 1)");
  if (!(cfg.h_max_blowup >= 10.0))
    throw std::domain_error("h_max_blowup must be >= 10");
  if (!(cfg.u_cap > 0.0)) throw std::domain_error("u_cap must be positive");
  if (cfg.u_cap > space.r_max * (1.0 + 1e-12))
    throw std::domain_error("u_cap exceeds the maximal tube radius");
  if (cfg.max_steps < 1) throw std::domain_error("max_steps must be >= 1");
  if (!(cfg.max_du > 0.0)) throw std::domain_error("max_du must be positive");
  if (problem.lambda * cfg.h_max_blowup > 690.0)
    throw std::domain_error(
        "lambda * h_max_blowup too large for double range; lower h_max_blowup");

  const System sys(space, problem.lambda);
  const double lambda = problem.lambda;
  const double H = cfg.h_max_blowup;

  IntegrationOutcome out;
  out.u_star = std::numeric_limits<double>::quiet_NaN();
  GridFunction& grid = out.grid;
  grid.push_back(0.0, problem.a, 0.0, std::exp(lambda * problem.a / n));

  if (!std::is_sorted(probes.begin(), probes.end()))
    throw std::domain_error("probe abscissae must be sorted ascending");
  std::size_t probe_next = 0;
  while (probe_next < probes.size() && probes[probe_next] <= 0.0) ++probe_next;

  // Emits probe points inside (u0, u0 + emit_frac*du] from the dense step.
  auto emit = [&](const DenseStep& ds, double emit_frac, double u_end) {
    while (probe_next < probes.size() && probes[probe_next] < u_end) {
      const double p = probes[probe_next];
      const double t = (p - ds.u0) / ds.du;
      if (t > emit_frac + 1e-15) break;
      const double hp = ds.h(t);
      const double h1p = std::max(ds.h1(t), 0.0);
      grid.push_back(p, hp, h1p, second_derivative(space, lambda, p, hp, h1p));
      ++probe_next;
    }
    if (probe_next < probes.size() && probes[probe_next] == u_end) ++probe_next;
  };

  double u = 0.0;
  State y{problem.a, 0.0};
  State k1 = sys.rhs(u, y);
  double du = std::min({cfg.max_du, cfg.u_cap / 100.0, 1e-3});
  bool fsal_valid = true;

  for (int step = 0; step < cfg.max_steps; ++step) {
    if (u >= cfg.u_cap * (1.0 - 1e-15)) {
      out.status = StopReason::ReachedCap;
      return out;
    }

    const double floor = kStepFloorScale * std::max(1.0, u);
    if (du < floor) {
      // Stepping cannot resolve the remaining distance. Near a genuine
      // blow-up pole, h ~ -(n+1)/lambda log(r - u) + c, so the pole sits
      // (n+1)/(lambda h') ahead; finish with that model.
      const double h1v = std::pow(std::max(y.v, 0.0), 1.0 / n);
      const double rho = lambda > 0.0 && h1v > 0.0
                             ? (n + 1.0) / (lambda * h1v)
                             : std::numeric_limits<double>::infinity();
      if (lambda > 0.0 && rho < 1e-9 * std::max(1.0, u) && y.h > problem.a) {
        double u_star =
            u + rho * (1.0 - std::exp(-lambda * (H - y.h) / (n + 1.0)));
        if (u_star <= u)
          u_star = std::nextafter(u, std::numeric_limits<double>::infinity());
        DenseStep tail{u, u_star - u, y.h, h1v,
                       second_derivative(space, lambda, u, y.h, h1v),
                       H,   h1v * std::exp(lambda * (H - y.h) / (n + 1.0)),
                       0.0};
        tail.h2vE = second_derivative(space, lambda, u_star, H, tail.h1vE);
        emit(tail, 1.0, u_star);
        if (u_star > grid.u.back())
          grid.push_back(u_star, H, tail.h1vE, tail.h2vE);
        out.status = StopReason::BlewUp;
        out.u_star = u_star;
        return out;
      }
      throw IntegrationDivergedError("step size underflow at u=" + format_double(u), u);
    }

    bool clipped_to_cap = false;
    if (u + du >= cfg.u_cap) {
      du = cfg.u_cap - u;
      clipped_to_cap = true;
    }

    if (!fsal_valid) k1 = sys.rhs(u, y);

    const State y2{y.h + du * a21 * k1.h, y.v + du * a21 * k1.v};
    const State k2 = sys.rhs(u + c2 * du, y2);
    const State y3{y.h + du * (a31 * k1.h + a32 * k2.h),
                   y.v + du * (a31 * k1.v + a32 * k2.v)};
    const State k3 = sys.rhs(u + c3 * du, y3);
    const State y4{y.h + du * (a41 * k1.h + a42 * k2.h + a43 * k3.h),
                   y.v + du * (a41 * k1.v + a42 * k2.v + a43 * k3.v)};
    const State k4 = sys.rhs(u + c4 * du, y4);
    const State y5{
        y.h + du * (a51 * k1.h + a52 * k2.h + a53 * k3.h + a54 * k4.h),
        y.v + du * (a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v)};
    const State k5 = sys.rhs(u + c5 * du, y5);
    const State y6{y.h + du * (a61 * k1.h + a62 * k2.h + a63 * k3.h +
                               a64 * k4.h + a65 * k5.h),
                   y.v + du * (a61 * k1.v + a62 * k2.v + a63 * k3.v +
                               a64 * k4.v + a65 * k5.v)};
    const State k6 = sys.rhs(u + du, y6);
    State ynew{
        y.h + du * (b1 * k1.h + b3 * k3.h + b4 * k4.h + b5 * k5.h + b6 * k6.h),
        y.v + du * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v)};
    ynew.v = std::max(ynew.v, 0.0);  // roundoff guard near the center
    const State k7 = sys.rhs(u + du, ynew);

    const double err_h = du * (e1 * k1.h + e3 * k3.h + e4 * k4.h +
                               e5 * k5.h + e6 * k6.h + e7 * k7.h);
    const double err_v = du * (e1 * k1.v + e3 * k3.v + e4 * k4.v +
                               e5 * k5.v + e6 * k6.v + e7 * k7.v);
    const double sc_h =
        cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y.h), std::abs(ynew.h));
    const double sc_v =
        cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y.v), std::abs(ynew.v));
    const double rh = err_h / sc_h, rv = err_v / sc_v;
    const double err = std::sqrt(0.5 * (rh * rh + rv * rv));

    if (!std::isfinite(err) || !std::isfinite(ynew.h) || !std::isfinite(ynew.v)) {
      du *= 0.25;  // transient overrange; retry smaller
      fsal_valid = false;
      continue;
    }

    if (err > 1.0) {
      du *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      fsal_valid = false;
      continue;
    }

    // Accepted.
    const double u_new = clipped_to_cap ? cfg.u_cap : u + du;
    DenseStep ds{u,
                 u_new - u,
                 y.h,
                 k1.h,  // = (h')(u) from the FSAL stage
                 second_derivative(space, lambda, u, y.h, k1.h),
                 ynew.h,
                 k7.h,
                 second_derivative(space, lambda, u_new, ynew.h, k7.h)};

    if (ynew.h >= H) {
      // h is nondecreasing, so the first threshold crossing lies inside this
      // step; bisect the dense interpolant keeping the upper sample.
      double tlo = 0.0, thi = 1.0;
      for (int it = 0; it < 80 && (thi - tlo) > 1e-16; ++it) {
        const double tm = 0.5 * (tlo + thi);
        (ds.h(tm) >= H ? thi : tlo) = tm;
      }
      const double u_star = u + thi * ds.du;
      emit(ds, thi, u_star);
      if (u_star > grid.u.back()) {
        const double hs = ds.h(thi);
        const double h1s = std::max(ds.h1(thi), 0.0);
        grid.push_back(u_star, hs, h1s,
                       second_derivative(space, lambda, u_star, hs, h1s));
      }
      out.status = StopReason::BlewUp;
      out.u_star = u_star;
      return out;
    }

    emit(ds, 1.0, u_new);
    if (u_new > grid.u.back())
      grid.push_back(u_new, ynew.h, k7.h, ds.h2vE);

    u = u_new;
    y = ynew;
    k1 = k7;
    fsal_valid = true;
    du = std::min(cfg.max_du,
                  du * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2))));
  }

  out.status = StopReason::StepLimit;
  return out;
}

double ode_residual(const SpaceSpec& space, double lambda,
                    const GridFunction& grid,
                    const std::function<double(double)>* density_override) {
  if (grid.size() < 2) return 0.0;
  const int n = space.n;
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = density_override ? (*density_override)(grid.u[i])
                                      : density(space, grid.u[i]);
    const double forcing = std::exp(lambda * grid.h[i]) * d;
    const double lhs = grid.h2[i] * std::pow(grid.h1[i], n - 1);
    worst = std::max(worst, std::abs(lhs - forcing) / (1.0 + forcing));
  }
  return worst;
}

}  // namespace tubepot
