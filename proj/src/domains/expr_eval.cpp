#include "absint/domains/expr_eval.hpp"

namespace absint::domains {

using frontend::IntType;

namespace {

Interval clamp(const Interval& v, IntType t) {
  return t == IntType::i32 ? v.meet(Interval::i32_range()) : v;
}

Interval as_truth(const Interval& a, bool negate) {
  if (a.is_bottom()) return {};
  bool can_zero = a.contains(0);
  bool can_nonzero = !(a.singleton() && *a.singleton() == 0);
  bool can_true = negate ? can_zero : can_nonzero;
  bool can_false = negate ? can_nonzero : can_zero;
  if (can_true && can_false) return {0, 1};
  return Interval::constant(can_true ? 1 : 0);
}

// Values of x such that x `cmp` some value of other.
Interval compatible(BinOp cmp, const Interval& other) {
  using B = Bound;
  switch (cmp) {
    case BinOp::lt: return {B::minus_infinity(), other.hi() - 1};
    case BinOp::le: return {B::minus_infinity(), other.hi()};
    case BinOp::gt: return {other.lo() + 1, B::plus_infinity()};
    case BinOp::ge: return {other.lo(), B::plus_infinity()};
    case BinOp::eq: return other;
    default: return Interval::top();
  }
}

}  // namespace

BinOp negate_comparison(BinOp cmp) {
  switch (cmp) {
    case BinOp::lt: return BinOp::ge;
    case BinOp::le: return BinOp::gt;
    case BinOp::gt: return BinOp::le;
    case BinOp::ge: return BinOp::lt;
    case BinOp::eq: return BinOp::ne;
    case BinOp::ne: return BinOp::eq;
    default: return cmp;
  }
}

BinOp swap_comparison(BinOp cmp) {
  switch (cmp) {
    case BinOp::lt: return BinOp::gt;
    case BinOp::le: return BinOp::ge;
    case BinOp::gt: return BinOp::lt;
    case BinOp::ge: return BinOp::le;
    default: return cmp;
  }
}

Interval eval_interval(const Expr& e, const std::function<Interval(Var)>& lookup) {
  switch (e.kind) {
    case Expr::Kind::int_lit: return Interval::constant(e.value);
    case Expr::Kind::var: return lookup(var_of(e));
    case Expr::Kind::rand: return {e.lo, e.hi};
    case Expr::Kind::neg: return clamp(-eval_interval(*e.lhs, lookup), e.type);
    case Expr::Kind::lnot: return as_truth(eval_interval(*e.lhs, lookup), true);
    case Expr::Kind::binop: break;
  }
  Interval a = eval_interval(*e.lhs, lookup);
  if (a.is_bottom()) return {};
  if (e.op == BinOp::land || e.op == BinOp::lor) {
    Interval b = eval_interval(*e.rhs, lookup);
    return apply_binop(e.op, as_truth(a, false), as_truth(b, false));
  }
  Interval b = eval_interval(*e.rhs, lookup);
  Interval r = apply_binop(e.op, a, b);
  return frontend::is_arithmetic(e.op) ? clamp(r, e.type) : r;
}

bool refine_expr(const Expr& e, const Interval& target, const IntervalStore& store) {
  if (target.is_bottom()) return false;
  auto lookup = [&](Var v) { return store.get(v); };
  switch (e.kind) {
    case Expr::Kind::int_lit: return target.contains(e.value);
    case Expr::Kind::var: return store.refine(var_of(e), target);
    case Expr::Kind::rand: return !Interval(e.lo, e.hi).meet(target).is_bottom();
    case Expr::Kind::neg: {
      Interval t = clamp(target, e.type);
      return refine_expr(*e.lhs, -t, store);
    }
    case Expr::Kind::lnot: return !eval_interval(e, lookup).meet(target).is_bottom();
    case Expr::Kind::binop: break;
  }
  if (!frontend::is_arithmetic(e.op) || e.op == BinOp::mul || e.op == BinOp::div ||
      e.op == BinOp::mod)
    return !eval_interval(e, lookup).meet(target).is_bottom();
  Interval t = clamp(target, e.type);
  Interval a = eval_interval(*e.lhs, lookup);
  Interval b = eval_interval(*e.rhs, lookup);
  if (e.op == BinOp::add) {
    if (!refine_expr(*e.lhs, t - b, store)) return false;
    a = eval_interval(*e.lhs, lookup);
    return refine_expr(*e.rhs, t - a, store);
  }
  if (!refine_expr(*e.lhs, t + b, store)) return false;
  a = eval_interval(*e.lhs, lookup);
  return refine_expr(*e.rhs, a - t, store);
}

bool refine_compare(BinOp cmp, const Expr& l, const Expr& r, const IntervalStore& store) {
  auto lookup = [&](Var v) { return store.get(v); };
  for (int round = 0; round < 2; ++round) {
    Interval a = eval_interval(l, lookup);
    Interval b = eval_interval(r, lookup);
    if (a.is_bottom() || b.is_bottom()) return false;
    Interval verdict = apply_binop(cmp, a, b);
    if (verdict.is_bottom() || (verdict.singleton() && *verdict.singleton() == 0)) return false;
    if (verdict.singleton()) return true;  // always true, nothing to refine
    if (cmp == BinOp::ne) {
      if (auto c = b.singleton()) {
        if (!refine_expr(l, a.exclude(*c), store)) return false;
      } else if (auto c2 = a.singleton()) {
        if (!refine_expr(r, b.exclude(*c2), store)) return false;
      }
      continue;
    }
    if (!refine_expr(l, a.meet(compatible(cmp, b)), store)) return false;
    a = eval_interval(l, lookup);
    if (!refine_expr(r, b.meet(compatible(swap_comparison(cmp), a)), store)) return false;
  }
  Interval a = eval_interval(l, lookup);
  Interval b = eval_interval(r, lookup);
  Interval verdict = apply_binop(cmp, a, b);
  return !(verdict.is_bottom() || (verdict.singleton() && *verdict.singleton() == 0));
}

}  // namespace absint::domains
