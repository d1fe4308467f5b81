#pragma once

#include <ostream>

#include "absint/hooks/hook.hpp"

namespace absint::hooks {

enum class TraceVerbosity { brief, full };

// One line per event, indented by nesting depth. At full verbosity every
// StmtAfter is followed by the post-state print.
class TraceHook : public Hook {
 public:
  TraceHook(std::ostream& out, TraceVerbosity v) : out_(out), verbosity_(v) {}

  std::string name() const override { return "trace"; }
  void on_stmt_before(const StmtBefore& e) override;
  void on_stmt_after(const StmtAfter& e) override;
  void on_expr_evaluated(const ExprEvaluated& e) override;
  void on_function_enter(const FunctionEnter& e) override;
  void on_function_exit(const FunctionExit& e) override;
  void on_loop_iteration(const LoopIteration& e) override;
  void on_alarm(const AlarmRaised& e) override;

 private:
  void line(const std::string& text);

  std::ostream& out_;
  TraceVerbosity verbosity_;
  int depth_ = 0;
};

}  // namespace absint::hooks
