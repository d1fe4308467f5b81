#include "absint/frontend/concrete.hpp"

#include <set>
#include <stdexcept>

namespace absint::frontend {

const char* to_string(RuntimeErrorKind k) {
  switch (k) {
    case RuntimeErrorKind::overflow: return "overflow";
    case RuntimeErrorKind::div_by_zero: return "div-by-zero";
    case RuntimeErrorKind::mod_by_zero: return "mod-by-zero";
    case RuntimeErrorKind::assert_failure: return "assert-failure";
  }
  return "?";
}

namespace {

struct Stop {
  ConcreteOutcome::Status status;
  std::optional<RuntimeErrorKind> kind;
  SourceLoc loc;
};

struct Frame {
  const FuncDef* fn;
  std::vector<std::int64_t> values;
  std::vector<bool> live;
};

enum class Flow { next, returned };

class Interpreter {
 public:
  Interpreter(const Program& p, const InputResolver& in, const ConcreteOptions& o)
      : program_(p), inputs_(in), opts_(o) {}

  ConcreteOutcome run() {
    const FuncDef* entry = program_.find(program_.entry);
    if (!entry) throw std::invalid_argument("entry function '" + program_.entry + "' not found");
    std::vector<std::int64_t> args;
    for (std::size_t i = 0; i < entry->params.size(); ++i) {
      if (!inputs_.param) throw std::invalid_argument("no value for entry parameter");
      std::int64_t v = inputs_.param(i, entry->params[i].name);
      if (v < i32_min || v > i32_max) throw std::invalid_argument("entry argument out of range");
      args.push_back(v);
    }
    try {
      call(*entry, args, true);
    } catch (const Stop& s) {
      out_.status = s.status;
      out_.error = s.kind;
      if (s.kind) out_.error_loc = s.loc;
    }
    out_.steps = steps_;
    return out_;
  }

 private:
  std::int64_t call(const FuncDef& fn, const std::vector<std::int64_t>& args, bool entry) {
    if (frames_.size() >= opts_.max_call_depth)
      throw Stop{ConcreteOutcome::Status::inconclusive, std::nullopt, fn.loc};
    Frame f{&fn, std::vector<std::int64_t>(fn.locals.size() + 1, 0),
            std::vector<bool>(fn.locals.size() + 1, false)};
    for (std::size_t i = 0; i < args.size(); ++i) {
      f.values[i] = args[i];
      f.live[i] = true;
    }
    frames_.push_back(std::move(f));
    struct Pop {
      Interpreter* self;
      bool entry;
      ~Pop() {
        if (entry) self->snapshot();
        self->frames_.pop_back();
      }
    } pop{this, entry};
    exec_block(fn.body);
    return frames_.back().values[fn.return_slot()];
  }

  void snapshot() {
    const Frame& f = frames_.back();
    for (std::size_t s = 0; s < f.fn->locals.size(); ++s)
      if (touched_.count(static_cast<int>(s))) out_.final_values[f.fn->locals[s]] = f.values[s];
  }

  void step(const SourceLoc& loc) {
    if (++steps_ > opts_.step_budget)
      throw Stop{ConcreteOutcome::Status::inconclusive, std::nullopt, loc};
  }

  void set(int slot, std::int64_t v) {
    Frame& f = frames_.back();
    f.values[slot] = v;
    f.live[slot] = true;
    if (frames_.size() == 1) touched_.insert(slot);
  }

  Flow exec_block(const Block& b) {
    Flow flow = Flow::next;
    for (const auto& s : b) {
      flow = exec(*s);
      if (flow == Flow::returned) break;
    }
    Frame& f = frames_.back();
    for (const auto& s : b)
      if (s->kind == Stmt::Kind::decl || (s->kind == Stmt::Kind::call && s->declares_result))
        f.live[s->slot] = false;
    return flow;
  }

  Flow exec(const Stmt& s) {
    step(s.loc);
    if (opts_.observer) {
      const Frame& f = frames_.back();
      std::vector<std::pair<int, std::int64_t>> live;
      for (std::size_t i = 0; i < f.fn->locals.size(); ++i)
        if (f.live[i]) live.emplace_back(static_cast<int>(i), f.values[i]);
      opts_.observer(*f.fn, s, live);
    }
    switch (s.kind) {
      case Stmt::Kind::decl:
      case Stmt::Kind::assign: set(s.slot, eval(*s.expr)); return Flow::next;
      case Stmt::Kind::print:
        out_.printed.push_back(s.var + " = " + std::to_string(frames_.back().values[s.slot]));
        return Flow::next;
      case Stmt::Kind::assert_:
        if (eval(*s.expr) == 0)
          throw Stop{ConcreteOutcome::Status::runtime_error, RuntimeErrorKind::assert_failure, s.loc};
        return Flow::next;
      case Stmt::Kind::if_:
        return exec_block(eval(*s.expr) != 0 ? s.then_block : s.else_block);
      case Stmt::Kind::while_:
        while (eval(*s.expr) != 0) {
          step(s.loc);
          if (exec_block(s.then_block) == Flow::returned) return Flow::returned;
        }
        return Flow::next;
      case Stmt::Kind::return_:
        if (s.expr) {
          Frame& f = frames_.back();
          f.values[f.fn->return_slot()] = eval(*s.expr);
        }
        return Flow::returned;
      case Stmt::Kind::call: {
        std::vector<std::int64_t> args;
        for (const auto& a : s.args) args.push_back(eval(*a));
        if (is_builtin(s.callee)) return Flow::next;
        const FuncDef* callee = program_.find(s.callee);
        std::int64_t r = call(*callee, args, false);
        if (s.has_result) set(s.slot, r);
        return Flow::next;
      }
    }
    return Flow::next;
  }

  std::int64_t checked(std::int64_t v, const Expr& e) const {
    if (v < i32_min || v > i32_max)
      throw Stop{ConcreteOutcome::Status::runtime_error, RuntimeErrorKind::overflow, e.loc};
    return v;
  }

  std::int64_t eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::int_lit: return e.value;
      case Expr::Kind::var: return frames_.back().values[e.slot];
      case Expr::Kind::rand: {
        std::size_t n = rand_count_[&e]++;
        if (!inputs_.rand) throw std::invalid_argument("no value for rand site");
        std::int64_t v = inputs_.rand(e, n);
        if (v < e.lo || v > e.hi)
          throw std::invalid_argument("rand value outside [lo,hi] at " + e.loc.to_string());
        return v;
      }
      case Expr::Kind::neg: return checked(-eval(*e.lhs), e);
      case Expr::Kind::lnot: return eval(*e.lhs) == 0 ? 1 : 0;
      case Expr::Kind::binop: break;
    }
    if (e.op == BinOp::land) return eval(*e.lhs) != 0 && eval(*e.rhs) != 0 ? 1 : 0;
    if (e.op == BinOp::lor) return eval(*e.lhs) != 0 || eval(*e.rhs) != 0 ? 1 : 0;
    std::int64_t a = eval(*e.lhs);
    std::int64_t b = eval(*e.rhs);
    switch (e.op) {
      case BinOp::add: return checked(a + b, e);
      case BinOp::sub: return checked(a - b, e);
      case BinOp::mul: return checked(a * b, e);
      case BinOp::div:
        if (b == 0)
          throw Stop{ConcreteOutcome::Status::runtime_error, RuntimeErrorKind::div_by_zero, e.loc};
        return checked(a / b, e);
      case BinOp::mod:
        if (b == 0)
          throw Stop{ConcreteOutcome::Status::runtime_error, RuntimeErrorKind::mod_by_zero, e.loc};
        return checked(a % b, e);
      case BinOp::lt: return a < b;
      case BinOp::le: return a <= b;
      case BinOp::eq: return a == b;
      case BinOp::ne: return a != b;
      case BinOp::gt: return a > b;
      case BinOp::ge: return a >= b;
      default: return 0;
    }
  }

  const Program& program_;
  const InputResolver& inputs_;
  const ConcreteOptions& opts_;
  std::vector<Frame> frames_;
  std::map<const Expr*, std::size_t> rand_count_;
  std::set<int> touched_;
  std::uint64_t steps_ = 0;
  ConcreteOutcome out_;
};

}  // namespace

ConcreteOutcome interpret_concrete(const Program& program, const InputResolver& inputs,
                                   const ConcreteOptions& opts) {
  return Interpreter(program, inputs, opts).run();
}

}  // namespace absint::frontend
