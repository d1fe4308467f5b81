#include "absint/hooks/hook.hpp"

namespace absint::hooks {

std::optional<domains::ThresholdSet> HookBus::thresholds(const frontend::Program& p) {
  std::optional<domains::ThresholdSet> out;
  dispatch([&](Hook& h) {
    if (!out) out = h.thresholds(p);
  });
  return out;
}

}  // namespace absint::hooks
