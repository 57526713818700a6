#pragma once

#include <string>
#include <vector>

namespace tubepot::validation {

struct CheckResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full oracle/invariant battery at desk scale (deterministic; no
/// randomness beyond a fixed-seed sampler). One entry per check.
std::vector<CheckResult> run_validation_suite();

/// Render without timings (stable across runs, used for determinism checks).
std::string to_stable_json(const std::vector<CheckResult>& results);

/// Human-readable pass/fail table.
std::string to_table(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace tubepot::validation
