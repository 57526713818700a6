#include "tubepot/quadrature.hpp"

#include <cmath>

namespace tubepot {

namespace {

double simpson_step(const std::function<double(double)>& f, double a,
                    double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // the relative floor stops refinement once the panel is resolved to
  // machine precision, whatever its magnitude
  const double accept =
      std::max(15.0 * tol, 30e-15 * (std::abs(left) + std::abs(right)));
  if (depth <= 0 || std::abs(delta) <= accept)
    return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace tubepot
