#include "absint/hooks/registry.hpp"

#include <stdexcept>

#include "absint/hooks/coverage.hpp"
#include "absint/hooks/detectors.hpp"
#include "absint/hooks/profiler.hpp"
#include "absint/hooks/thresholds.hpp"

namespace absint::hooks {

const std::vector<std::string>& hook_names() {
  static const std::vector<std::string> names{"coverage",    "profile", "unsoundness",
                                              "imprecision", "trace",   "thresholds"};
  return names;
}

std::shared_ptr<Hook> make_hook(const std::string& name, std::ostream& trace_out,
                                TraceVerbosity verbosity) {
  if (name == "coverage") return std::make_shared<CoverageHook>();
  if (name == "profile") return std::make_shared<ProfilerHook>();
  if (name == "unsoundness") return std::make_shared<UnsoundnessHook>();
  if (name == "imprecision") return std::make_shared<ImprecisionHook>();
  if (name == "trace") return std::make_shared<TraceHook>(trace_out, verbosity);
  if (name == "thresholds") return std::make_shared<ThresholdsHook>();
  throw std::invalid_argument("unknown hook '" + name + "'");
}

}  // namespace absint::hooks
