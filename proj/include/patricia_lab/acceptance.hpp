#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace patricia_lab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against their thresholds
  double seconds = 0;
};

struct AcceptanceOptions {
  unsigned threads = 0;
  std::uint64_t seed = 0x9a7c1c1a5eedULL;
  std::vector<int> only;  // empty runs all criteria
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 11;

/// Runs the acceptance criteria in id order. Internal errors inside a
/// criterion mark it failed with the error text as detail.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "[PASS]  3 six-string fixture (0.01s): ..." style line.
std::string format_result_line(const CriterionResult& r);

}  // namespace patricia_lab
