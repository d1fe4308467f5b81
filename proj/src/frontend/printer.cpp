#include "absint/frontend/printer.hpp"

#include <sstream>

namespace absint::frontend {

namespace {

int precedence(const Expr& e) {
  if (e.kind != Expr::Kind::binop) return e.kind == Expr::Kind::int_lit && e.value < 0 ? 7 : 8;
  switch (e.op) {
    case BinOp::lor: return 1;
    case BinOp::land: return 2;
    case BinOp::eq:
    case BinOp::ne: return 3;
    case BinOp::lt:
    case BinOp::le:
    case BinOp::gt:
    case BinOp::ge: return 4;
    case BinOp::add:
    case BinOp::sub: return 5;
    default: return 6;
  }
}

void expr_to(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::int_lit: os << e.value; break;
    case Expr::Kind::var: os << e.name; break;
    case Expr::Kind::rand: os << "rand(" << e.lo << ", " << e.hi << ")"; break;
    case Expr::Kind::neg:
    case Expr::Kind::lnot:
      os << (e.kind == Expr::Kind::neg ? "-" : "!");
      if (e.lhs->kind == Expr::Kind::var) {
        os << e.lhs->name;
      } else {
        os << "(";
        expr_to(os, *e.lhs);
        os << ")";
      }
      break;
    case Expr::Kind::binop: {
      int p = precedence(e);
      bool lp = precedence(*e.lhs) < p;
      bool rp = precedence(*e.rhs) <= p;
      if (lp) os << "(";
      expr_to(os, *e.lhs);
      if (lp) os << ")";
      os << " " << to_string(e.op) << " ";
      if (rp) os << "(";
      expr_to(os, *e.rhs);
      if (rp) os << ")";
      break;
    }
  }
}

class ProgramPrinter {
 public:
  explicit ProgramPrinter(const PrintOptions& o) : opts_(o) {}

  std::string run(const Program& p) {
    for (std::size_t i = 0; i < p.functions.size(); ++i) {
      if (i > 0) line("", nullptr);
      function(p.functions[i]);
    }
    return out_.str();
  }

 private:
  // Writes one output line, preceded by a marker when the virtual position
  // would not match loc.
  void line(const std::string& text, const SourceLoc* loc) {
    if (opts_.line_markers && loc && (loc->file != vfile_ || loc->line != vline_)) {
      out_ << "#line " << loc->line << " \"" << loc->file << "\"\n";
      vfile_ = loc->file;
      vline_ = loc->line;
    }
    out_ << std::string(depth_ * opts_.indent, ' ') << text << "\n";
    ++vline_;
  }

  void function(const FuncDef& f) {
    std::string head = (f.returns_value ? "int " : "void ") + f.name + "(";
    for (std::size_t i = 0; i < f.params.size(); ++i)
      head += (i ? ", int " : "int ") + f.params[i].name;
    head += ") {";
    line(head, &f.loc);
    block(f.body);
    line("}", nullptr);
  }

  void block(const Block& b) {
    ++depth_;
    for (const auto& s : b) stmt(*s);
    --depth_;
  }

  static std::string call_text(const Stmt& s) {
    std::string t = s.callee + "(";
    for (std::size_t i = 0; i < s.args.size(); ++i) t += (i ? ", " : "") + print_expr(*s.args[i]);
    return t + ")";
  }

  void stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::decl: line("int " + s.var + " = " + print_expr(*s.expr) + ";", &s.loc); break;
      case Stmt::Kind::assign: line(s.var + " = " + print_expr(*s.expr) + ";", &s.loc); break;
      case Stmt::Kind::assert_: line("assert(" + print_expr(*s.expr) + ");", &s.loc); break;
      case Stmt::Kind::print: line("print(" + s.var + ");", &s.loc); break;
      case Stmt::Kind::return_:
        line(s.expr ? "return " + print_expr(*s.expr) + ";" : "return;", &s.loc);
        break;
      case Stmt::Kind::call: {
        std::string t = call_text(s) + ";";
        if (s.declares_result) t = "int " + s.var + " = " + t;
        else if (s.has_result) t = s.var + " = " + t;
        line(t, &s.loc);
        break;
      }
      case Stmt::Kind::if_:
        line("if (" + print_expr(*s.expr) + ") {", &s.loc);
        block(s.then_block);
        if (!s.else_block.empty()) {
          line("} else {", nullptr);
          block(s.else_block);
        }
        line("}", nullptr);
        break;
      case Stmt::Kind::while_:
        line("while (" + print_expr(*s.expr) + ") {", &s.loc);
        block(s.then_block);
        line("}", nullptr);
        break;
    }
  }

  const PrintOptions& opts_;
  std::ostringstream out_;
  std::string vfile_;
  int vline_ = 1;
  std::size_t depth_ = 0;
};

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  expr_to(os, e);
  return os.str();
}

std::string print_program(const Program& p, const PrintOptions& opts) {
  return ProgramPrinter(opts).run(p);
}

std::size_t count_lines(std::string_view text) {
  std::size_t n = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (text.substr(start, 5) != "#line") ++n;
    start = end + 1;
  }
  return n;
}

}  // namespace absint::frontend
