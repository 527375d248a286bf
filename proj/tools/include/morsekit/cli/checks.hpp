#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace morsekit::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Assertions over the bundled fixtures, in a fixed order.
std::vector<CheckResult> fixture_checks();

struct TrialResult {
  std::uint64_t seed = 0;
  std::size_t points = 0;
  bool rearranged = false;
  std::vector<CheckResult> failures;
};

/// Names of the invariants exercised by run_trial, in report order.
const std::vector<std::string>& trial_check_names();

/// Generates one complex from `seed` and runs the invariant battery on it.
TrialResult run_trial(std::uint64_t seed, std::size_t max_points);

/// Seed of trial `index` in a run started from `base_seed`.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index);

/// Runs `trials` trials on up to `jobs` threads; results are in trial order
/// whatever the thread count.
std::vector<TrialResult> run_trials(std::uint64_t base_seed, std::size_t trials,
                                    std::size_t max_points, unsigned jobs);

}  // namespace morsekit::cli
