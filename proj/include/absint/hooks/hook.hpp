#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absint/domains/interval.hpp"
#include "absint/engine/report.hpp"
#include "absint/engine/state_view.hpp"
#include "absint/frontend/ast.hpp"

namespace absint::hooks {

using engine::Callstack;
using engine::StateView;

struct StmtBefore {
  const frontend::Stmt& stmt;
  const StateView& pre;
  const Callstack& callstack;
};

struct StmtAfter {
  const frontend::Stmt& stmt;
  const StateView& pre;
  const StateView& post;
  const Callstack& callstack;
  // Some runtime-error check of this statement (including nested ones)
  // was not proved safe.
  bool runtime_error_possible = false;
};

struct ExprEvaluated {
  const frontend::Expr& expr;  // source node
  domains::Interval value;     // projection of its value
  const Callstack& callstack;
  bool entry_param_read = false;  // plain read of an entry-function parameter
};

struct FunctionEnter {
  const std::string& name;
  const Callstack& callstack;  // includes the new frame
};

struct FunctionExit {
  const std::string& name;
  const Callstack& callstack;  // still includes the frame
  std::chrono::nanoseconds elapsed;
};

struct LoopIteration {
  const frontend::Stmt& loop;
  int index;  // 0-based
  const Callstack& callstack;
};

struct AlarmRaised {
  const engine::CheckRecord& check;
};

// Analysis observer. Hooks see states only through StateView.
class Hook {
 public:
  virtual ~Hook() = default;
  virtual std::string name() const = 0;

  virtual void on_start(const frontend::Program&) {}
  virtual void on_stmt_before(const StmtBefore&) {}
  virtual void on_stmt_after(const StmtAfter&) {}
  virtual void on_expr_evaluated(const ExprEvaluated&) {}
  virtual void on_function_enter(const FunctionEnter&) {}
  virtual void on_function_exit(const FunctionExit&) {}
  virtual void on_loop_iteration(const LoopIteration&) {}
  virtual void on_alarm(const AlarmRaised&) {}
  virtual void on_finish(const engine::Report&) {}

  // The one influence channel: widening landmarks, consulted before the
  // analysis when the configuration asks for collected thresholds.
  virtual std::optional<domains::ThresholdSet> thresholds(const frontend::Program&) {
    return std::nullopt;
  }
};

// Dispatches events to hooks in registration order. A hook that throws is
// disabled for the rest of the analysis and the failure is recorded.
class HookBus {
 public:
  void add(std::shared_ptr<Hook> h) { hooks_.push_back({std::move(h), true}); }
  bool empty() const { return hooks_.empty(); }
  std::size_t size() const { return hooks_.size(); }
  const std::vector<std::string>& failures() const { return failures_; }
  void clear_failures() { failures_.clear(); }

  template <class F>
  void dispatch(F&& call) {
    for (auto& e : hooks_) {
      if (!e.enabled) continue;
      try {
        call(*e.hook);
      } catch (const std::exception& ex) {
        e.enabled = false;
        failures_.push_back("hook '" + e.hook->name() + "' disabled: " + ex.what());
      } catch (...) {
        e.enabled = false;
        failures_.push_back("hook '" + e.hook->name() + "' disabled: unknown exception");
      }
    }
  }

  // First threshold set offered by an enabled hook.
  std::optional<domains::ThresholdSet> thresholds(const frontend::Program& p);

 private:
  struct Entry {
    std::shared_ptr<Hook> hook;
    bool enabled;
  };
  std::vector<Entry> hooks_;
  std::vector<std::string> failures_;
};

}  // namespace absint::hooks
