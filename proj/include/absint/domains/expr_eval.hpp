#pragma once

// Non-relational evaluation and backward refinement of expressions over an
// interval store. Shared by every numeric domain: the interval environment
// uses it directly, zones and the product use it for the expressions their
// relational transfer functions do not cover exactly.
//
// Expressions reaching the domains have been rewritten by the engine: Var
// nodes carry a global variable id in `slot`, and arithmetic nodes typed
// i32 evaluate to their mathematical result met with the i32 range (the
// continuation after an overflow alarm). Nodes typed math are exact.

#include <cstdint>
#include <functional>

#include "absint/domains/interval.hpp"
#include "absint/frontend/ast.hpp"

namespace absint::domains {

using Var = std::uint32_t;
using frontend::Expr;
using frontend::ExprPtr;

inline Var var_of(const Expr& e) { return static_cast<Var>(e.slot); }

struct IntervalStore {
  std::function<Interval(Var)> get;
  // Meets the variable with the interval; returns false on bottom.
  std::function<bool(Var, const Interval&)> refine;
};

Interval eval_interval(const Expr& e, const std::function<Interval(Var)>& lookup);

// Refines the store so that e evaluates within target. Returns false
// when no value of e can lie in target.
bool refine_expr(const Expr& e, const Interval& target, const IntervalStore& store);

// Refines the store with `l cmp r` (cmp a comparison operator) by a few
// rounds of forward/backward propagation. Returns false when the atom is
// unsatisfiable in the store.
bool refine_compare(BinOp cmp, const Expr& l, const Expr& r, const IntervalStore& store);

BinOp negate_comparison(BinOp cmp);
BinOp swap_comparison(BinOp cmp);

// Splits a condition into comparison atoms and drives the domain through
// them. D provides assume_atom(cmp, l, r) -> D, join, is_bottom.
template <class D>
D assume_condition(const D& d, const Expr& cond, bool truth) {
  if (d.is_bottom()) return d;
  if (cond.kind == Expr::Kind::lnot) return assume_condition(d, *cond.lhs, !truth);
  if (cond.kind == Expr::Kind::binop) {
    if (cond.op == BinOp::land || cond.op == BinOp::lor) {
      bool conj = (cond.op == BinOp::land) == truth;
      if (conj) return assume_condition(assume_condition(d, *cond.lhs, truth), *cond.rhs, truth);
      D left = assume_condition(d, *cond.lhs, truth);
      D right = assume_condition(assume_condition(d, *cond.lhs, !truth), *cond.rhs, truth);
      return left.join(right);
    }
    if (frontend::is_comparison(cond.op))
      return d.assume_atom(truth ? cond.op : negate_comparison(cond.op), *cond.lhs, *cond.rhs);
  }
  static const ExprPtr zero = Expr::int_lit(0, {}, frontend::IntType::math);
  return d.assume_atom(truth ? BinOp::ne : BinOp::eq, cond, *zero);
}

}  // namespace absint::domains
