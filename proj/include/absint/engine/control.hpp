#pragma once

#include <vector>

#include "absint/engine/report.hpp"
#include "absint/engine/state_view.hpp"

namespace absint::engine {

// Points where an execution controller may suspend the analysis.
struct PausePoint {
  enum class Kind { stmt_before, expr_evaluated, function_enter, alarm };
  Kind kind = Kind::stmt_before;
  // Innermost in-flight statement; for function_enter the call statement
  // (null for the entry function).
  const frontend::Stmt* stmt = nullptr;
  const frontend::Expr* expr = nullptr;     // expr_evaluated
  const CheckRecord* alarm = nullptr;       // alarm, before it is recorded
  const StateView* state = nullptr;         // pre-state of stmt (expr: current)
  const Callstack* callstack = nullptr;
  const std::vector<int>* iterations = nullptr;  // enclosing loop iteration indices
  std::string function;                          // function_enter
};

// Called synchronously on the analysis thread; may block. Throwing aborts
// the analysis and the exception propagates out of analyze().
class ExecutionControl {
 public:
  virtual ~ExecutionControl() = default;
  virtual void pause(const PausePoint& p) = 0;
};

}  // namespace absint::engine
