// Acceptance battery: runs every validation check, prints one pass/fail line
// per criterion, then verifies the battery itself is fast and deterministic
// (criterion 12). Exits nonzero when anything fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "tubepot/validate.hpp"

using tubepot::validation::CheckResult;

namespace {

struct RuntimeBound {
  int id;
  double seconds;
};

// stated per-criterion budgets; everything else only counts toward the total
constexpr RuntimeBound kBounds[] = {
    {1, 1.0}, {2, 1.0}, {3, 1.0}, {5, 20.0}, {11, 30.0}};

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CheckResult> first =
      tubepot::validation::run_validation_suite();
  const std::vector<CheckResult> second =
      tubepot::validation::run_validation_suite();
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  bool all_ok = true;
  for (const CheckResult& r : first) {
    bool ok = r.pass;
    for (const RuntimeBound& b : kBounds) {
      if (b.id == r.id && r.seconds >= b.seconds) ok = false;
    }
    std::printf("%s criterion %2d: %s (%s; %.2fs)\n", ok ? "PASS" : "FAIL",
                r.id, r.title.c_str(), r.detail.c_str(), r.seconds);
    all_ok = all_ok && ok;
  }

  const bool deterministic = tubepot::validation::to_stable_json(first) ==
                             tubepot::validation::to_stable_json(second);
  const bool fast = total < 120.0;
  const bool crit12 = deterministic && fast &&
                      tubepot::validation::all_passed(first) &&
                      tubepot::validation::all_passed(second);
  std::printf(
      "%s criterion 12: full battery deterministic and under budget "
      "(two runs in %.2fs, identical=%s)\n",
      crit12 ? "PASS" : "FAIL", total, deterministic ? "yes" : "no");
  all_ok = all_ok && crit12;

  return all_ok ? 0 : 1;
}
