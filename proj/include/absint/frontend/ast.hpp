#pragma once

// Located AST of the MiniImp language.
//
// Nodes are built by the parser, resolved once (variable slots, statement
// ids) and then shared as immutable values.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace absint::frontend {

struct SourceLoc {
  std::string file;
  int line = 1;
  int col = 1;

  std::string to_string() const;
  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
  friend auto operator<=>(const SourceLoc&, const SourceLoc&) = default;
};

// Source programs use only i32; math marks operations the analyzer proved
// overflow-free and rewrote to mathematical integers.
enum class IntType { i32, math };

inline constexpr std::int64_t i32_min = -2147483648LL;
inline constexpr std::int64_t i32_max = 2147483647LL;

enum class BinOp { add, sub, mul, div, mod, lt, le, eq, ne, gt, ge, land, lor };

const char* to_string(BinOp op);
bool is_arithmetic(BinOp op);
bool is_comparison(BinOp op);
bool is_logical(BinOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Reference to a local variable of the enclosing function (slot index into
// FuncDef::locals). Filled in by the resolver.
inline constexpr int unresolved_slot = -1;

struct Expr {
  enum class Kind { int_lit, var, binop, neg, lnot, rand };

  Kind kind = Kind::int_lit;
  SourceLoc loc;
  IntType type = IntType::i32;

  std::int64_t value = 0;        // int_lit
  std::string name;              // var
  int slot = unresolved_slot;    // var
  BinOp op = BinOp::add;         // binop
  ExprPtr lhs, rhs;              // binop; neg/lnot use lhs
  std::int64_t lo = 0, hi = 0;   // rand

  static ExprPtr int_lit(std::int64_t v, SourceLoc loc, IntType t = IntType::i32);
  static ExprPtr var(std::string name, int slot, SourceLoc loc);
  static ExprPtr binop(BinOp op, ExprPtr l, ExprPtr r, SourceLoc loc, IntType t = IntType::i32);
  static ExprPtr neg(ExprPtr e, SourceLoc loc, IntType t = IntType::i32);
  static ExprPtr lnot(ExprPtr e, SourceLoc loc);
  static ExprPtr rand(std::int64_t lo, std::int64_t hi, SourceLoc loc);
};

struct Stmt;
using StmtPtr = std::shared_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct Stmt {
  enum class Kind { decl, assign, if_, while_, assert_, call, return_, print };

  Kind kind = Kind::assign;
  SourceLoc loc;
  std::size_t id = 0;  // unique within a Program after numbering

  std::string var;               // decl/assign/print target; call result
  int slot = unresolved_slot;
  ExprPtr expr;                  // decl init, assign rhs, condition, return value
  Block then_block, else_block;  // if; while body is then_block

  std::string callee;            // call
  std::vector<ExprPtr> args;
  bool has_result = false;       // `x = f(..)` or `int x = f(..)`
  bool declares_result = false;  // `int x = f(..)`
};

// Name of a statement constructor, used by transfer-kind breakpoints.
const char* kind_name(Stmt::Kind k);

struct Param {
  std::string name;
  IntType type = IntType::i32;
};

struct FuncDef {
  std::string name;
  SourceLoc loc;
  std::vector<Param> params;
  bool returns_value = false;
  Block body;

  // Slot table: params first, then each declaration in source order.
  std::vector<std::string> locals;
  int return_slot() const { return static_cast<int>(locals.size()); }
};

struct Program {
  std::vector<FuncDef> functions;
  std::string entry = "main";

  const FuncDef* find(std::string_view name) const;
  std::size_t statement_count() const;
};

// Builtins a call may target without a definition.
bool is_builtin(std::string_view name);
inline constexpr const char* builtin_planted_crash = "__builtin_crash_if_mod_by_negative";

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLoc loc, const std::string& msg)
      : std::runtime_error(loc.to_string() + ": error: " + msg), loc_(std::move(loc)) {}
  const SourceLoc& where() const { return loc_; }

 private:
  SourceLoc loc_;
};

// Visit every statement of a block in pre-order.
template <class F>
void for_each_stmt(const Block& block, F&& f) {
  for (const auto& s : block) {
    f(*s);
    for_each_stmt(s->then_block, f);
    for_each_stmt(s->else_block, f);
  }
}

// Structural comparison. Statement lines and files are compared when
// compare_lines is set; columns and expression locations never are.
bool same_program(const Program& a, const Program& b, bool compare_lines);

}  // namespace absint::frontend
