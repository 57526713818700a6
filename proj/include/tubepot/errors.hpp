#pragma once

#include <stdexcept>
#include <string>

namespace tubepot {

/// Integration produced a non-finite state or stalled below the step floor
/// away from a blow-up pole. Carries the last good abscissa.
class IntegrationDivergedError : public std::runtime_error {
 public:
  IntegrationDivergedError(const std::string& what, double last_u)
      : std::runtime_error(what), last_u_(last_u) {}
  double last_u() const { return last_u_; }

 private:
  double last_u_;
};

/// No bisection bracket could be established within the expansion limits.
class NoBracketError : public std::runtime_error {
 public:
  NoBracketError(const std::string& what, double a_lo, double a_hi)
      : std::runtime_error(what), a_lo_(a_lo), a_hi_(a_hi) {}
  double a_lo() const { return a_lo_; }
  double a_hi() const { return a_hi_; }

 private:
  double a_lo_, a_hi_;
};

/// Bisection ran out of iterations. Carries the best center value seen.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_a)
      : std::runtime_error(what), best_a_(best_a) {}
  double best_a() const { return best_a_; }

 private:
  double best_a_;
};

/// A consistency check on caller-supplied data failed.
class InconsistentInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested operation is not defined for this space family.
class UnsupportedFamilyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A grid does not extend far enough for the requested evaluation.
class InsufficientGridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tubepot
