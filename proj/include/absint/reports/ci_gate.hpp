#pragma once

#include <string>
#include <vector>

#include "absint/reports/diff.hpp"

namespace absint::reports {

struct GatePolicy {
  double selectivity_tolerance = 0.0;
  KeyMode key_mode = KeyMode::location;
  bool update_baseline = false;
};

struct GateResult {
  // 0 pass, 1 regression, 2 unreadable current results, 3 missing baseline.
  int exit_code = 0;
  std::vector<std::string> failures;
  std::vector<std::string> improvements;
  std::vector<std::string> notes;
  std::string summary() const;
};

GateResult ci_gate(const std::string& baseline_dir, const std::string& current_dir,
                   const GatePolicy& policy = {});

}  // namespace absint::reports
