#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace octoslice {

/// Outcome of one acceptance criterion.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Worst observed residual against `tolerance` (0 for purely boolean checks).
  double residual = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

inline constexpr int kCriterionCount = 11;

/// Runs criterion `id` (1 to kCriterionCount); all randomness derives from seed.
CriterionResult run_criterion(int id, std::uint64_t seed);

std::vector<CriterionResult> run_all_criteria(std::uint64_t seed);

}  // namespace octoslice
