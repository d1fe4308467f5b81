#include "absint/frontend/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace absint::frontend {

namespace {

const std::set<std::string, std::less<>> keywords = {
    "int", "void", "if", "else", "while", "for", "assert", "return", "print", "rand"};

// Longest match first.
const char* const puncts[] = {"&&", "||", "<=", ">=", "==", "!=", "++", "--", "+=", "-=",
                              "*=", "(",  ")",  "{",  "}",  ";",  ",",  "+",  "-",  "*",
                              "/",  "%",  "<",  ">",  "=",  "!"};

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) break;
      if (at_line_start_ && src_[pos_] == '#') {
        out.push_back(directive());
        continue;
      }
      at_line_start_ = false;
      out.push_back(next());
    }
    Token end;
    end.kind = Token::Kind::end;
    end.loc = here();
    out.push_back(end);
    return out;
  }

 private:
  SourceLoc here() const { return {file_, line_, col_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
      at_line_start_ = true;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (src_.substr(pos_, 2) == "/*") {
        SourceLoc start = here();
        advance();
        advance();
        while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= src_.size()) throw ParseError(start, "unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  // #line N "file"
  Token directive() {
    Token t;
    t.kind = Token::Kind::line_directive;
    t.loc = here();
    std::size_t start = pos_;
    while (pos_ < src_.size() && src_[pos_] != '\n') advance();
    t.text = std::string(src_.substr(start, pos_ - start));
    std::istringstream in(t.text);
    std::string hash, quoted;
    long n = 0;
    in >> hash >> n;
    if (hash != "#line" || !in || n < 1) throw ParseError(t.loc, "malformed line directive");
    in >> std::ws;
    std::getline(in, quoted);
    while (!quoted.empty() && std::isspace(static_cast<unsigned char>(quoted.back())))
      quoted.pop_back();
    if (!quoted.empty()) {
      if (quoted.size() < 2 || quoted.front() != '"' || quoted.back() != '"')
        throw ParseError(t.loc, "malformed line directive");
      file_ = quoted.substr(1, quoted.size() - 2);
    }
    if (pos_ < src_.size()) advance();
    line_ = static_cast<int>(n);
    col_ = 1;
    return t;
  }

  Token next() {
    Token t;
    t.loc = here();
    char c = src_[pos_];
    std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      t.kind = Token::Kind::number;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      t.kind = Token::Kind::ident;
    } else {
      for (const char* p : puncts) {
        std::string_view pv(p);
        if (src_.substr(pos_, pv.size()) == pv) {
          for (std::size_t i = 0; i < pv.size(); ++i) advance();
          t.kind = Token::Kind::punct;
          t.text = p;
          return t;
        }
      }
      throw ParseError(t.loc, std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    if (t.kind == Token::Kind::ident && keywords.count(t.text)) t.kind = Token::Kind::keyword;
    return t;
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  bool at_line_start_ = true;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {
    std::erase_if(toks_, [](const Token& t) { return t.kind == Token::Kind::line_directive; });
  }

  Program program() {
    Program p;
    while (peek().kind != Token::Kind::end) p.functions.push_back(function());
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool is(std::string_view text, std::size_t k = 0) const {
    const Token& t = peek(k);
    return (t.kind == Token::Kind::punct || t.kind == Token::Kind::keyword) && t.text == text;
  }
  Token take() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.loc, "expected " + expected + ", got " + got);
  }
  Token expect(std::string_view text) {
    if (!is(text)) fail("'" + std::string(text) + "'");
    return take();
  }
  Token ident() {
    if (peek().kind != Token::Kind::ident) fail("identifier");
    return take();
  }

  FuncDef function() {
    FuncDef f;
    if (is("int")) {
      f.returns_value = true;
    } else if (!is("void")) {
      fail("function definition");
    }
    f.loc = take().loc;
    f.name = ident().text;
    expect("(");
    if (!is(")")) {
      do {
        expect("int");
        f.params.push_back({ident().text, IntType::i32});
      } while (is(",") && (take(), true));
    }
    expect(")");
    f.body = block();
    return f;
  }

  Block block() {
    expect("{");
    Block b;
    while (!is("}")) {
      if (peek().kind == Token::Kind::end) fail("'}'");
      statement(b);
    }
    take();
    return b;
  }

  Block body() {
    if (is("{")) return block();
    Block b;
    statement(b);
    return b;
  }

  static StmtPtr make(Stmt::Kind k, SourceLoc loc) {
    auto s = std::make_shared<Stmt>();
    s->kind = k;
    s->loc = std::move(loc);
    return s;
  }

  bool call_ahead() const { return peek().kind == Token::Kind::ident && is("(", 1); }

  StmtPtr call_stmt(SourceLoc loc) {
    auto s = make(Stmt::Kind::call, std::move(loc));
    s->callee = ident().text;
    expect("(");
    if (!is(")")) {
      do {
        s->args.push_back(expr());
      } while (is(",") && (take(), true));
    }
    expect(")");
    return s;
  }

  // Declaration, assignment, compound assignment, increment or call; no ';'.
  StmtPtr simple() {
    if (is("int")) {
      SourceLoc loc = take().loc;
      std::string name = ident().text;
      expect("=");
      if (call_ahead()) {
        auto s = call_stmt(loc);
        s->var = name;
        s->has_result = s->declares_result = true;
        return s;
      }
      auto s = make(Stmt::Kind::decl, loc);
      s->var = name;
      s->expr = expr();
      return s;
    }
    if (call_ahead()) return call_stmt(peek().loc);
    Token target = ident();
    auto s = make(Stmt::Kind::assign, target.loc);
    s->var = target.text;
    auto self = [&] { return Expr::var(target.text, unresolved_slot, target.loc); };
    if (is("++") || is("--")) {
      Token op = take();
      s->expr = Expr::binop(op.text == "++" ? BinOp::add : BinOp::sub, self(),
                            Expr::int_lit(1, op.loc), op.loc);
      return s;
    }
    if (is("+=") || is("-=") || is("*=")) {
      Token op = take();
      BinOp b = op.text == "+=" ? BinOp::add : op.text == "-=" ? BinOp::sub : BinOp::mul;
      s->expr = Expr::binop(b, self(), expr(), op.loc);
      return s;
    }
    expect("=");
    if (call_ahead()) {
      auto c = call_stmt(target.loc);
      c->var = target.text;
      c->has_result = true;
      return c;
    }
    s->expr = expr();
    return s;
  }

  void statement(Block& out) {
    const Token& t = peek();
    if (is("if")) {
      auto s = make(Stmt::Kind::if_, take().loc);
      expect("(");
      s->expr = expr();
      expect(")");
      s->then_block = body();
      if (is("else")) {
        take();
        s->else_block = body();
      }
      out.push_back(s);
    } else if (is("while")) {
      auto s = make(Stmt::Kind::while_, take().loc);
      expect("(");
      s->expr = expr();
      expect(")");
      s->then_block = body();
      out.push_back(s);
    } else if (is("for")) {
      SourceLoc loc = take().loc;
      expect("(");
      if (!is(";")) out.push_back(simple());
      expect(";");
      auto w = make(Stmt::Kind::while_, loc);
      w->expr = is(";") ? Expr::int_lit(1, peek().loc) : expr();
      expect(";");
      StmtPtr step;
      if (!is(")")) step = simple();
      expect(")");
      w->then_block = body();
      if (step) w->then_block.push_back(step);
      out.push_back(w);
    } else if (is("assert")) {
      auto s = make(Stmt::Kind::assert_, take().loc);
      expect("(");
      s->expr = expr();
      expect(")");
      expect(";");
      out.push_back(s);
    } else if (is("return")) {
      auto s = make(Stmt::Kind::return_, take().loc);
      if (!is(";")) s->expr = expr();
      expect(";");
      out.push_back(s);
    } else if (is("print")) {
      auto s = make(Stmt::Kind::print, take().loc);
      expect("(");
      s->var = ident().text;
      expect(")");
      expect(";");
      out.push_back(s);
    } else if (t.kind == Token::Kind::ident || is("int")) {
      out.push_back(simple());
      expect(";");
    } else {
      fail("statement");
    }
  }

  static int precedence(BinOp op) {
    switch (op) {
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

  std::optional<BinOp> binop_ahead() const {
    const Token& t = peek();
    if (t.kind != Token::Kind::punct) return std::nullopt;
    static const std::map<std::string, BinOp, std::less<>> table = {
        {"+", BinOp::add}, {"-", BinOp::sub},  {"*", BinOp::mul},  {"/", BinOp::div},
        {"%", BinOp::mod}, {"<", BinOp::lt},   {"<=", BinOp::le},  {"==", BinOp::eq},
        {"!=", BinOp::ne}, {">", BinOp::gt},   {">=", BinOp::ge},  {"&&", BinOp::land},
        {"||", BinOp::lor}};
    auto it = table.find(t.text);
    if (it == table.end()) return std::nullopt;
    return it->second;
  }

  ExprPtr expr(int min_prec = 1) {
    ExprPtr lhs = unary();
    while (auto op = binop_ahead()) {
      int p = precedence(*op);
      if (p < min_prec) break;
      SourceLoc loc = take().loc;
      ExprPtr rhs = expr(p + 1);
      lhs = Expr::binop(*op, lhs, rhs, loc);
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is("-")) {
      SourceLoc loc = take().loc;
      ExprPtr e = unary();
      if (e->kind == Expr::Kind::int_lit) return Expr::int_lit(-e->value, loc);
      return Expr::neg(e, loc);
    }
    if (is("!")) {
      SourceLoc loc = take().loc;
      return Expr::lnot(unary(), loc);
    }
    return primary();
  }

  std::int64_t signed_literal() {
    bool negative = false;
    SourceLoc loc = peek().loc;
    if (is("-")) {
      take();
      negative = true;
    }
    if (peek().kind != Token::Kind::number) fail("integer literal");
    std::int64_t v = number(take());
    v = negative ? -v : v;
    if (v < i32_min || v > i32_max) throw ParseError(loc, "integer literal out of int range");
    return v;
  }

  static std::int64_t number(const Token& t) {
    if (t.text.size() > 12) throw ParseError(t.loc, "integer literal too large");
    std::int64_t v = std::stoll(t.text);
    if (v > i32_max + 1) throw ParseError(t.loc, "integer literal too large");
    return v;
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::number) {
      Token n = take();
      return Expr::int_lit(number(n), n.loc);
    }
    if (is("rand")) {
      SourceLoc loc = take().loc;
      expect("(");
      std::int64_t lo = signed_literal();
      expect(",");
      std::int64_t hi = signed_literal();
      expect(")");
      if (lo > hi) throw ParseError(loc, "empty rand range");
      return Expr::rand(lo, hi, loc);
    }
    if (t.kind == Token::Kind::ident) {
      Token id = take();
      if (is("(")) throw ParseError(id.loc, "calls are statements, not expressions");
      return Expr::var(id.text, unresolved_slot, id.loc);
    }
    if (is("(")) {
      take();
      ExprPtr e = expr();
      expect(")");
      return e;
    }
    fail("expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Scoped name resolution. Each declaration gets a fresh slot; inner
// declarations shadow outer ones until the end of their block.
class Resolver {
 public:
  Resolver(Program& p, bool check_calls) : program_(p), check_calls_(check_calls) {}

  void run() {
    std::set<std::string> names;
    for (auto& f : program_.functions) {
      if (!names.insert(f.name).second)
        throw ParseError(f.loc, "redefinition of function '" + f.name + "'");
      if (is_builtin(f.name)) throw ParseError(f.loc, "'" + f.name + "' is reserved");
    }
    for (auto& f : program_.functions) function(f);
    std::size_t id = 0;
    for (auto& f : program_.functions)
      for_each_stmt(f.body, [&](const Stmt& s) { const_cast<Stmt&>(s).id = id++; });
  }

 private:
  void function(FuncDef& f) {
    fn_ = &f;
    f.locals.clear();
    scopes_.assign(1, {});
    for (const auto& p : f.params) {
      if (scopes_[0].count(p.name))
        throw ParseError(f.loc, "duplicate parameter '" + p.name + "'");
      declare(p.name);
    }
    block(f.body, false);
  }

  int declare(const std::string& name) {
    int slot = static_cast<int>(fn_->locals.size());
    fn_->locals.push_back(name);
    scopes_.back()[name] = slot;
    return slot;
  }

  int lookup(const std::string& name, const SourceLoc& loc) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    throw ParseError(loc, "use of undeclared variable '" + name + "'");
  }

  void block(Block& b, bool scoped) {
    if (scoped) scopes_.emplace_back();
    for (auto& s : b) stmt(*s);
    if (scoped) scopes_.pop_back();
  }

  ExprPtr expr(const ExprPtr& e) {
    if (!e) return e;
    switch (e->kind) {
      case Expr::Kind::var: return Expr::var(e->name, lookup(e->name, e->loc), e->loc);
      case Expr::Kind::binop: return Expr::binop(e->op, expr(e->lhs), expr(e->rhs), e->loc, e->type);
      case Expr::Kind::neg: return Expr::neg(expr(e->lhs), e->loc, e->type);
      case Expr::Kind::lnot: return Expr::lnot(expr(e->lhs), e->loc);
      case Expr::Kind::int_lit:
        if (e->value < i32_min || e->value > i32_max)
          throw ParseError(e->loc, "integer literal out of int range");
        return e;
      case Expr::Kind::rand: return e;
    }
    return e;
  }

  void stmt(Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::decl:
        s.expr = expr(s.expr);
        s.slot = declare(s.var);
        break;
      case Stmt::Kind::assign:
        s.expr = expr(s.expr);
        s.slot = lookup(s.var, s.loc);
        break;
      case Stmt::Kind::print: s.slot = lookup(s.var, s.loc); break;
      case Stmt::Kind::if_:
        s.expr = expr(s.expr);
        block(s.then_block, true);
        block(s.else_block, true);
        break;
      case Stmt::Kind::while_:
        s.expr = expr(s.expr);
        block(s.then_block, true);
        break;
      case Stmt::Kind::assert_: s.expr = expr(s.expr); break;
      case Stmt::Kind::return_:
        s.expr = expr(s.expr);
        if (s.expr && !fn_->returns_value)
          throw ParseError(s.loc, "void function '" + fn_->name + "' returns a value");
        if (!s.expr && fn_->returns_value)
          throw ParseError(s.loc, "non-void function '" + fn_->name + "' must return a value");
        break;
      case Stmt::Kind::call: {
        for (auto& a : s.args) a = expr(a);
        if (check_calls_) check_call(s);
        if (s.has_result) s.slot = s.declares_result ? declare(s.var) : lookup(s.var, s.loc);
        break;
      }
    }
  }

  void check_call(const Stmt& s) const {
    if (is_builtin(s.callee)) {
      if (s.args.size() != 2)
        throw ParseError(s.loc, "'" + s.callee + "' expects 2 arguments");
      if (s.has_result) throw ParseError(s.loc, "'" + s.callee + "' returns no value");
      return;
    }
    const FuncDef* f = program_.find(s.callee);
    if (!f) throw ParseError(s.loc, "call to undefined function '" + s.callee + "'");
    if (f->params.size() != s.args.size())
      throw ParseError(s.loc, "'" + s.callee + "' expects " + std::to_string(f->params.size()) +
                                  " arguments, got " + std::to_string(s.args.size()));
    if (s.has_result && !f->returns_value)
      throw ParseError(s.loc, "void function '" + s.callee + "' used as a value");
  }

  Program& program_;
  bool check_calls_;
  FuncDef* fn_ = nullptr;
  std::vector<std::map<std::string, int>> scopes_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

void resolve(Program& program, bool check_calls) { Resolver(program, check_calls).run(); }

Program parse_unit(std::string_view source, const std::string& file) {
  Program p = Parser(tokenize(source, file)).program();
  resolve(p, false);
  return p;
}

Program parse(std::string_view source, const std::string& file) {
  Program p = Parser(tokenize(source, file)).program();
  resolve(p, true);
  return p;
}

Program parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "': file not found");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

}  // namespace absint::frontend
