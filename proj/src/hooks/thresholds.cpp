#include "absint/hooks/thresholds.hpp"

namespace absint::hooks {

namespace {

using frontend::Expr;

void literals(const Expr& e, domains::ThresholdSet& out) {
  if (e.kind == Expr::Kind::int_lit) {
    for (std::int64_t d : {-1, 0, 1}) out.insert(e.value + d);
    return;
  }
  if (e.lhs) literals(*e.lhs, out);
  if (e.rhs) literals(*e.rhs, out);
}

void comparisons(const Expr& e, domains::ThresholdSet& out) {
  if (e.kind == Expr::Kind::binop && frontend::is_comparison(e.op)) {
    literals(e, out);
    return;
  }
  if (e.lhs) comparisons(*e.lhs, out);
  if (e.rhs) comparisons(*e.rhs, out);
}

}  // namespace

domains::ThresholdSet collect_thresholds(const frontend::Program& p) {
  domains::ThresholdSet th;
  for (const auto& fn : p.functions) {
    frontend::for_each_stmt(fn.body, [&](const frontend::Stmt& s) {
      if (s.expr) comparisons(*s.expr, th);
      for (const auto& a : s.args) comparisons(*a, th);
    });
  }
  return th;
}

}  // namespace absint::hooks
