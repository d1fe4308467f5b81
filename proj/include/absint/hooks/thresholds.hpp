#pragma once

#include "absint/domains/interval.hpp"
#include "absint/hooks/hook.hpp"

namespace absint::hooks {

// Defaults plus every integer literal occurring in a comparison, and its
// neighbours c-1 and c+1.
domains::ThresholdSet collect_thresholds(const frontend::Program& p);

class ThresholdsHook : public Hook {
 public:
  std::string name() const override { return "thresholds"; }
  std::optional<domains::ThresholdSet> thresholds(const frontend::Program& p) override {
    return collect_thresholds(p);
  }
};

}  // namespace absint::hooks
