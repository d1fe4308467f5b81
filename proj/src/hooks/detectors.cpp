#include "absint/hooks/detectors.hpp"

namespace absint::hooks {

std::string Warning::to_string() const {
  std::string stack;
  for (const auto& f : callstack) stack += (stack.empty() ? "" : ";") + f;
  return loc.to_string() + ": warning [" + detector + "]: " + message + " (in " + stack + ")";
}

void UnsoundnessHook::on_stmt_after(const StmtAfter& e) {
  using K = frontend::Stmt::Kind;
  if (e.stmt.kind != K::assign && e.stmt.kind != K::decl) return;
  if (e.pre.is_bottom() || !e.post.is_bottom() || e.runtime_error_possible) return;
  warnings_.push_back({name(), e.stmt.loc, engine::callstack_names(e.callstack),
                       "assignment to '" + e.stmt.var +
                           "' turned a reachable state into bottom"});
}

void ImprecisionHook::on_expr_evaluated(const ExprEvaluated& e) {
  if (e.entry_param_read || e.expr.kind == frontend::Expr::Kind::int_lit) return;
  if (e.expr.type != frontend::IntType::i32) return;
  if (e.value.is_bottom() || !domains::Interval::i32_range().leq(e.value)) return;
  auto names = engine::callstack_names(e.callstack);
  if (!seen_.emplace(e.expr.loc, names).second) return;
  warnings_.push_back({name(), e.expr.loc, std::move(names),
                       "expression covers the whole i32 range"});
}

}  // namespace absint::hooks
