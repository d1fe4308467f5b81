#pragma once

#include <optional>
#include <string>
#include <vector>

#include "absint/domains/interval.hpp"
#include "absint/frontend/ast.hpp"

namespace absint::engine {

// Read-only query interface over an abstract state, scoped to the
// variables visible at the observation point. The only access observers
// and the debugger get to states.
class StateView {
 public:
  virtual ~StateView() = default;
  virtual bool is_bottom() const = 0;
  // Visible variable names in declaration order; shadowed ones omitted.
  virtual std::vector<std::string> variables() const = 0;
  virtual std::optional<domains::Interval> project(const std::string& var) const = 0;
  // One line per fact about var (interval, then relational constraints);
  // empty when var is not visible.
  virtual std::vector<std::string> describe(const std::string& var) const = 0;
  virtual std::string print() const = 0;
};

struct Frame {
  std::string function;
  frontend::SourceLoc call_site;  // entry frame: the function's location
};

using Callstack = std::vector<Frame>;

std::vector<std::string> callstack_names(const Callstack& cs);

}  // namespace absint::engine
