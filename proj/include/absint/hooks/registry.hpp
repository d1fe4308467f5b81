#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "absint/hooks/hook.hpp"
#include "absint/hooks/trace.hpp"

namespace absint::hooks {

// Names accepted by --hook.
const std::vector<std::string>& hook_names();

// Throws std::invalid_argument for unknown names. trace_out must outlive
// the hook.
std::shared_ptr<Hook> make_hook(const std::string& name, std::ostream& trace_out,
                                TraceVerbosity verbosity = TraceVerbosity::brief);

}  // namespace absint::hooks
