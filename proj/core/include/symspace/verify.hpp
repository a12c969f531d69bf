#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symspace {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured residual / quantity
  double threshold = 0.0;  // acceptance bound it was held against
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Randomized invariant suites, one per module. Deterministic given the seed.
SuiteResult verify_matcore(uint64_t seed);
SuiteResult verify_involutions(uint64_t seed);
SuiteResult verify_series(uint64_t seed);
SuiteResult verify_gpd(uint64_t seed);
SuiteResult verify_flows(uint64_t seed);

std::vector<SuiteResult> verify_suites(const std::string& which, uint64_t seed);

}  // namespace symspace
