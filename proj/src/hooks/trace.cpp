#include "absint/hooks/trace.hpp"

#include <sstream>

#include "absint/frontend/printer.hpp"

namespace absint::hooks {

namespace {

std::string describe_stmt(const frontend::Stmt& s) {
  std::string out = frontend::kind_name(s.kind);
  if (!s.var.empty()) out += " " + s.var;
  if (s.kind == frontend::Stmt::Kind::call) out += " " + s.callee;
  return out;
}

}  // namespace

void TraceHook::line(const std::string& text) {
  out_ << std::string(static_cast<std::size_t>(depth_) * 2, ' ') << text << "\n";
}

void TraceHook::on_function_enter(const FunctionEnter& e) {
  line("enter " + e.name);
  ++depth_;
}

void TraceHook::on_function_exit(const FunctionExit& e) {
  --depth_;
  line("exit " + e.name);
}

void TraceHook::on_stmt_before(const StmtBefore& e) {
  line("before " + e.stmt.loc.to_string() + " " + describe_stmt(e.stmt));
  ++depth_;
}

void TraceHook::on_stmt_after(const StmtAfter& e) {
  --depth_;
  line("after " + e.stmt.loc.to_string() + " " + describe_stmt(e.stmt));
  if (verbosity_ != TraceVerbosity::full) return;
  std::istringstream state(e.post.print());
  std::string l;
  while (std::getline(state, l)) line("  | " + l);
}

void TraceHook::on_expr_evaluated(const ExprEvaluated& e) {
  line("eval " + e.expr.loc.to_string() + " " + frontend::print_expr(e.expr) + " = " +
       e.value.to_string());
}

void TraceHook::on_loop_iteration(const LoopIteration& e) {
  line("iteration " + std::to_string(e.index) + " of loop " + e.loop.loc.to_string());
}

void TraceHook::on_alarm(const AlarmRaised& e) {
  line("alarm " + e.check.loc.to_string() + " " + engine::to_string(e.check.kind) + ": " +
       e.check.detail);
}

}  // namespace absint::hooks
