#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtet {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const {
    for (const auto& c : criteria)
      if (!c.passed) return false;
    return !criteria.empty();
  }
};

// Runs the ten desk-scale verification suites and streams one pass/fail line
// per criterion to `log`.
AcceptanceReport run_acceptance(std::ostream& log);

}  // namespace mtet
