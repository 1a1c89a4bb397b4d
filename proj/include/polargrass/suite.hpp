#pragma once

// Acceptance criteria as seeded, self-contained checks, and the report
// aggregator that runs named scenarios from a config document.

#include <cstdint>
#include <string>

#include "polargrass/commands.hpp"

namespace polargrass {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  json metrics;  // deterministic residuals and counts; no timings
};

constexpr int kCriterionCount = 9;

/// Criteria 1..9. Random instances derive from `seed` and the id.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// Per-criterion seed derived from the suite seed.
std::uint64_t criterion_seed(std::uint64_t seed, int id);

/// Config: {"seed"?: u64, "scenarios": [{"name", "criterion"} |
/// {"name", "verb", "input", "expect_error"?}]}. Scenarios run in declared
/// order and the aggregate lists them in that order.
json report_suite(const json& config, const RunOptions& opts);

}  // namespace polargrass
