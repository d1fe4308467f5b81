#include "absint/frontend/ast.hpp"

#include <algorithm>

namespace absint::frontend {

std::string SourceLoc::to_string() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(col);
}

const char* to_string(BinOp op) {
  switch (op) {
    case BinOp::add: return "+";
    case BinOp::sub: return "-";
    case BinOp::mul: return "*";
    case BinOp::div: return "/";
    case BinOp::mod: return "%";
    case BinOp::lt: return "<";
    case BinOp::le: return "<=";
    case BinOp::eq: return "==";
    case BinOp::ne: return "!=";
    case BinOp::gt: return ">";
    case BinOp::ge: return ">=";
    case BinOp::land: return "&&";
    case BinOp::lor: return "||";
  }
  return "?";
}

bool is_arithmetic(BinOp op) {
  return op == BinOp::add || op == BinOp::sub || op == BinOp::mul || op == BinOp::div ||
         op == BinOp::mod;
}

bool is_comparison(BinOp op) {
  return op == BinOp::lt || op == BinOp::le || op == BinOp::eq || op == BinOp::ne ||
         op == BinOp::gt || op == BinOp::ge;
}

bool is_logical(BinOp op) { return op == BinOp::land || op == BinOp::lor; }

ExprPtr Expr::int_lit(std::int64_t v, SourceLoc loc, IntType t) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::int_lit;
  e->value = v;
  e->loc = std::move(loc);
  e->type = t;
  return e;
}

ExprPtr Expr::var(std::string name, int slot, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::var;
  e->name = std::move(name);
  e->slot = slot;
  e->loc = std::move(loc);
  return e;
}

ExprPtr Expr::binop(BinOp op, ExprPtr l, ExprPtr r, SourceLoc loc, IntType t) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::binop;
  e->op = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  e->loc = std::move(loc);
  e->type = t;
  return e;
}

ExprPtr Expr::neg(ExprPtr x, SourceLoc loc, IntType t) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::neg;
  e->lhs = std::move(x);
  e->loc = std::move(loc);
  e->type = t;
  return e;
}

ExprPtr Expr::lnot(ExprPtr x, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::lnot;
  e->lhs = std::move(x);
  e->loc = std::move(loc);
  return e;
}

ExprPtr Expr::rand(std::int64_t lo, std::int64_t hi, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::rand;
  e->lo = lo;
  e->hi = hi;
  e->loc = std::move(loc);
  return e;
}

const char* kind_name(Stmt::Kind k) {
  switch (k) {
    case Stmt::Kind::decl: return "decl";
    case Stmt::Kind::assign: return "assign";
    case Stmt::Kind::if_: return "if";
    case Stmt::Kind::while_: return "while";
    case Stmt::Kind::assert_: return "assert";
    case Stmt::Kind::call: return "call";
    case Stmt::Kind::return_: return "return";
    case Stmt::Kind::print: return "print";
  }
  return "?";
}

const FuncDef* Program::find(std::string_view name) const {
  auto it = std::find_if(functions.begin(), functions.end(),
                         [&](const FuncDef& f) { return f.name == name; });
  return it == functions.end() ? nullptr : &*it;
}

std::size_t Program::statement_count() const {
  std::size_t n = 0;
  for (const auto& f : functions) for_each_stmt(f.body, [&](const Stmt&) { ++n; });
  return n;
}

bool is_builtin(std::string_view name) { return name == builtin_planted_crash; }

namespace {

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->type != b->type) return false;
  switch (a->kind) {
    case Expr::Kind::int_lit: return a->value == b->value;
    case Expr::Kind::var: return a->name == b->name && a->slot == b->slot;
    case Expr::Kind::binop:
      return a->op == b->op && same_expr(a->lhs, b->lhs) && same_expr(a->rhs, b->rhs);
    case Expr::Kind::neg:
    case Expr::Kind::lnot: return same_expr(a->lhs, b->lhs);
    case Expr::Kind::rand: return a->lo == b->lo && a->hi == b->hi;
  }
  return false;
}

bool same_block(const Block& a, const Block& b, bool lines);

bool same_stmt(const Stmt& a, const Stmt& b, bool lines) {
  if (a.kind != b.kind) return false;
  if (lines && (a.loc.file != b.loc.file || a.loc.line != b.loc.line)) return false;
  if (a.var != b.var || a.slot != b.slot || !same_expr(a.expr, b.expr)) return false;
  if (a.callee != b.callee || a.has_result != b.has_result ||
      a.declares_result != b.declares_result || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_expr(a.args[i], b.args[i])) return false;
  return same_block(a.then_block, b.then_block, lines) &&
         same_block(a.else_block, b.else_block, lines);
}

bool same_block(const Block& a, const Block& b, bool lines) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_stmt(*a[i], *b[i], lines)) return false;
  return true;
}

}  // namespace

bool same_program(const Program& a, const Program& b, bool compare_lines) {
  if (a.entry != b.entry || a.functions.size() != b.functions.size()) return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto& f = a.functions[i];
    const auto& g = b.functions[i];
    if (f.name != g.name || f.returns_value != g.returns_value || f.locals != g.locals ||
        f.params.size() != g.params.size())
      return false;
    for (std::size_t p = 0; p < f.params.size(); ++p)
      if (f.params[p].name != g.params[p].name) return false;
    if (!same_block(f.body, g.body, compare_lines)) return false;
  }
  return true;
}

}  // namespace absint::frontend
