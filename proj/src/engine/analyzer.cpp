#include "absint/engine/analyzer.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "absint/domains/domain.hpp"
#include "absint/hooks/hook.hpp"

namespace absint::engine {

namespace {

using domains::BinOp;
using domains::Interval;
using domains::NumericDomain;
using domains::ThresholdSet;
using domains::Var;
using frontend::Expr;
using frontend::ExprPtr;
using frontend::FuncDef;
using frontend::IntType;
using frontend::Program;
using frontend::Stmt;
using Clock = std::chrono::steady_clock;

enum class Verdict { safe, may_fail, must_fail };

Var var_id(std::size_t depth, int slot) {
  return static_cast<Var>((depth << 16) | static_cast<std::size_t>(slot));
}

ExprPtr lit(std::int64_t v) { return Expr::int_lit(v, {}, IntType::math); }

struct ActiveFrame {
  const FuncDef* fn = nullptr;
  std::size_t depth = 0;
  // Visible bindings, innermost last.
  std::vector<std::pair<std::string, Var>> scope;
  // Every variable this frame introduced, removed when it returns.
  std::vector<Var> owned;
};

template <NumericDomain D>
class View final : public StateView {
 public:
  View(const D& d, const ActiveFrame& f, std::size_t scope_len)
      : d_(d), f_(f), len_(std::min(scope_len, f.scope.size())) {}

  bool is_bottom() const override { return d_.is_bottom(); }

  std::vector<std::string> variables() const override {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < len_; ++i)
      if (visible(i)) out.push_back(f_.scope[i].first);
    return out;
  }

  std::optional<Interval> project(const std::string& var) const override {
    auto v = lookup(var);
    if (!v) return std::nullopt;
    return d_.project(*v);
  }

  std::vector<std::string> describe(const std::string& var) const override {
    auto v = lookup(var);
    if (!v) return {};
    return d_.describe(*v, namer());
  }

  std::string print() const override { return d_.print(namer()); }

 private:
  bool visible(std::size_t i) const {
    for (std::size_t j = i + 1; j < len_; ++j)
      if (f_.scope[j].first == f_.scope[i].first) return false;
    return true;
  }

  std::optional<Var> lookup(const std::string& name) const {
    for (std::size_t i = len_; i-- > 0;)
      if (f_.scope[i].first == name) return f_.scope[i].second;
    return std::nullopt;
  }

  domains::Namer namer() const {
    return [this](Var v) -> std::string {
      for (std::size_t i = len_; i-- > 0;) {
        if (f_.scope[i].second != v) continue;
        return visible(i) ? f_.scope[i].first : std::string();
      }
      return {};
    };
  }

  const D& d_;
  const ActiveFrame& f_;
  std::size_t len_;
};

template <NumericDomain D>
class Interpreter {
 public:
  Interpreter(const Program& p, const Configuration& c, const AnalysisOptions& o,
              ThresholdSet th)
      : prog_(p), cfg_(c), bus_(o.hooks), ctl_(o.control), th_(std::move(th)) {}

  void run() {
    const FuncDef* entry = prog_.find(prog_.entry);
    entry_ = entry;
    frames_.push_back({entry, 0, {}, {}});
    callstack_.push_back({entry->name, entry->loc});
    D st = D::top();
    for (std::size_t i = 0; i < entry->params.size(); ++i) {
      Var v = var_id(0, static_cast<int>(i));
      st = st.add_var(v).constrain(v, Interval::i32_range());
      declare(entry->params[i].name, v);
    }
    enter_function(nullptr, entry->name);
    auto start = Clock::now();
    exec_block(entry->body, st);
    exit_function(entry->name, Clock::now() - start);
  }

  std::vector<CheckRecord> checks() const {
    std::vector<CheckRecord> out;
    out.reserve(checks_.size());
    for (const auto& [_, c] : checks_) out.push_back(c);
    std::sort(out.begin(), out.end(), check_order);
    return out;
  }

  const std::vector<std::string>& assumptions() const { return assumptions_; }

 private:
  struct InFlight {
    const Stmt* stmt;
    const D* pre;
  };

  ActiveFrame& frame() { return frames_.back(); }
  bool observed() const { return (bus_ && !bus_->empty()) || ctl_; }

  void declare(const std::string& name, Var v) {
    frame().scope.emplace_back(name, v);
    frame().owned.push_back(v);
  }

  Var local(int slot) const { return var_id(frames_.back().depth, slot); }

  // ---- events ---------------------------------------------------------

  template <class F>
  void emit(F&& f) {
    if (bus_ && !bus_->empty()) bus_->dispatch(f);
  }

  void enter_function(const Stmt* call, const std::string& name) {
    emit([&](hooks::Hook& h) { h.on_function_enter({name, callstack_}); });
    if (ctl_) {
      PausePoint p;
      p.kind = PausePoint::Kind::function_enter;
      p.stmt = call;
      p.callstack = &callstack_;
      p.iterations = &iterations_;
      p.function = name;
      ctl_->pause(p);
    }
  }

  void exit_function(const std::string& name, Clock::duration elapsed) {
    auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed);
    emit([&](hooks::Hook& h) { h.on_function_exit({name, callstack_, ns}); });
  }

  void expr_evaluated(const Expr& src, const ExprPtr& node, const D& st, bool param_read) {
    if (!observed() || st.is_bottom()) return;
    Interval value = st.eval(*node);
    emit([&](hooks::Hook& h) {
      h.on_expr_evaluated({src, value, callstack_, param_read});
    });
    if (ctl_ && src.kind != Expr::Kind::var && src.kind != Expr::Kind::rand) {
      View<D> view(st, frame(), frame().scope.size());
      PausePoint p;
      p.kind = PausePoint::Kind::expr_evaluated;
      p.stmt = inflight_.empty() ? nullptr : inflight_.back().stmt;
      p.expr = &src;
      p.state = &view;
      p.callstack = &callstack_;
      p.iterations = &iterations_;
      ctl_->pause(p);
    }
  }

  // ---- checks ---------------------------------------------------------

  void check(CheckKind kind, const frontend::SourceLoc& loc, Verdict v, std::string detail) {
    if (v != Verdict::safe) ++unsafe_seen_;
    if (non_final_ > 0) return;
    CheckRecord rec{kind, loc, v == Verdict::safe ? CheckStatus::safe : CheckStatus::alarm,
                    callstack_names(callstack_), std::move(detail)};
    if (rec.status == CheckStatus::alarm) {
      if (ctl_ && !inflight_.empty()) {
        const InFlight& top = inflight_.back();
        View<D> view(*top.pre, frame(), top_scope_len_.back());
        PausePoint p;
        p.kind = PausePoint::Kind::alarm;
        p.stmt = top.stmt;
        p.alarm = &rec;
        p.state = &view;
        p.callstack = &callstack_;
        p.iterations = &iterations_;
        ctl_->pause(p);
      }
      emit([&](hooks::Hook& h) { h.on_alarm({rec}); });
    }
    auto key = std::make_tuple(rec.loc, rec.kind, rec.callstack);
    auto [it, fresh] = checks_.emplace(key, rec);
    if (!fresh && rec.status == CheckStatus::alarm && it->second.status == CheckStatus::safe)
      it->second = rec;
  }

  void assumption(const std::string& text) {
    if (assumption_set_.insert(text).second) assumptions_.push_back(text);
  }

  // ---- expressions ----------------------------------------------------

  // Rewrites e for the domains (global variable ids; arithmetic typed math
  // when proved overflow-free), records its checks and refines st with the
  // safety condition of every alarm.
  ExprPtr walk(const Expr& e, D& st) {
    switch (e.kind) {
      case Expr::Kind::int_lit: return Expr::int_lit(e.value, e.loc, IntType::math);
      case Expr::Kind::rand: return Expr::rand(e.lo, e.hi, e.loc);
      case Expr::Kind::var: {
        auto n = std::make_shared<Expr>(e);
        n->slot = static_cast<int>(local(e.slot));
        n->type = IntType::math;
        ExprPtr node = n;
        bool param = frames_.size() == 1 && static_cast<std::size_t>(e.slot) < entry_->params.size();
        expr_evaluated(e, node, st, param);
        return node;
      }
      case Expr::Kind::lnot: {
        ExprPtr c = walk(*e.lhs, st);
        ExprPtr node = Expr::lnot(c, e.loc);
        expr_evaluated(e, node, st, false);
        return node;
      }
      case Expr::Kind::neg: {
        ExprPtr c = walk(*e.lhs, st);
        if (st.is_bottom()) return Expr::neg(c, e.loc);
        Interval a = st.eval(*c);
        Interval r = -a;
        bool may = !r.leq(Interval::i32_range());
        Verdict v = !may ? Verdict::safe
                         : r.meet(Interval::i32_range()).is_bottom() ? Verdict::must_fail
                                                                     : Verdict::may_fail;
        check(CheckKind::integer_overflow, e.loc, v, overflow_detail(r, may));
        if (may) st = st.assume_atom(BinOp::ge, *c, *lit(frontend::i32_min + 1));
        ExprPtr node = Expr::neg(c, e.loc, may ? IntType::i32 : IntType::math);
        expr_evaluated(e, node, st, false);
        return node;
      }
      case Expr::Kind::binop: break;
    }
    if (e.op == BinOp::land || e.op == BinOp::lor) {
      ExprPtr l = walk(*e.lhs, st);
      if (st.is_bottom()) return Expr::binop(e.op, l, e.rhs, e.loc);
      const bool conj = e.op == BinOp::land;
      D evaluated = st.assume(*l, conj);
      D skipped = st.assume(*l, !conj);
      ExprPtr r = walk(*e.rhs, evaluated);
      st = skipped.join(evaluated);
      ExprPtr node = Expr::binop(e.op, l, r, e.loc);
      expr_evaluated(e, node, st, false);
      return node;
    }
    ExprPtr l = walk(*e.lhs, st);
    ExprPtr r = st.is_bottom() ? e.rhs : walk(*e.rhs, st);
    if (st.is_bottom()) return Expr::binop(e.op, l, r, e.loc);
    if (!frontend::is_arithmetic(e.op)) {
      ExprPtr node = Expr::binop(e.op, l, r, e.loc);
      expr_evaluated(e, node, st, false);
      return node;
    }
    if (e.op == BinOp::div || e.op == BinOp::mod) {
      Interval b = st.eval(*r);
      bool may = b.contains(0);
      bool must = b.singleton() && *b.singleton() == 0;
      Verdict v = !may ? Verdict::safe : must ? Verdict::must_fail : Verdict::may_fail;
      check(e.op == BinOp::div ? CheckKind::division_by_zero : CheckKind::modulo_by_zero, e.loc,
            v, "divisor " + b.to_string() + (may ? " contains 0" : ""));
      if (may) st = st.assume_atom(BinOp::ne, *r, *lit(0));
      if (st.is_bottom()) return Expr::binop(e.op, l, r, e.loc);
    }
    auto res = domains::interval_binop(e.op, st.eval(*l), st.eval(*r), IntType::i32);
    bool may = res.may_overflow;
    if (e.op != BinOp::mod) {
      Verdict v = !may ? Verdict::safe
                       : res.value.meet(Interval::i32_range()).is_bottom() ? Verdict::must_fail
                                                                           : Verdict::may_fail;
      check(CheckKind::integer_overflow, e.loc, v, overflow_detail(res.value, may));
      if (may) {
        ExprPtr m = Expr::binop(e.op, l, r, e.loc, IntType::math);
        st = st.assume_atom(BinOp::ge, *m, *lit(frontend::i32_min));
        st = st.assume_atom(BinOp::le, *m, *lit(frontend::i32_max));
      }
    }
    ExprPtr node = Expr::binop(e.op, l, r, e.loc, may ? IntType::i32 : IntType::math);
    expr_evaluated(e, node, st, false);
    return node;
  }

  static std::string overflow_detail(const Interval& r, bool may) {
    if (!may) return "result " + r.to_string();
    return "result " + r.to_string() + " exceeds " + Interval::i32_range().to_string();
  }

  // ---- statements -----------------------------------------------------

  D exec_block(const frontend::Block& b, D st) {
    const std::size_t mark = frame().scope.size();
    for (const auto& s : b) {
      if (st.is_bottom()) break;
      st = exec_stmt(*s, st);
    }
    auto& scope = frame().scope;
    for (std::size_t i = scope.size(); i-- > mark;) st = st.remove_var(scope[i].second);
    scope.resize(mark);
    return st;
  }

  D exec_stmt(const Stmt& s, const D& pre) {
    if (pre.is_bottom()) return pre;
    const std::size_t scope_len = frame().scope.size();
    View<D> pre_view(pre, frame(), scope_len);
    emit([&](hooks::Hook& h) { h.on_stmt_before({s, pre_view, callstack_}); });
    if (ctl_) {
      PausePoint p;
      p.kind = PausePoint::Kind::stmt_before;
      p.stmt = &s;
      p.state = &pre_view;
      p.callstack = &callstack_;
      p.iterations = &iterations_;
      ctl_->pause(p);
    }
    const std::size_t unsafe_before = unsafe_seen_;
    inflight_.push_back({&s, &pre});
    top_scope_len_.push_back(scope_len);
    if (s.kind == Stmt::Kind::decl || (s.kind == Stmt::Kind::call && s.declares_result))
      declare(s.var, local(s.slot));
    D post = transfer(s, pre);
    inflight_.pop_back();
    top_scope_len_.pop_back();
    if (bus_ && !bus_->empty()) {
      View<D> pre_v(pre, frame(), scope_len);
      View<D> post_v(post, frame(), frame().scope.size());
      bool rte = unsafe_seen_ != unsafe_before;
      emit([&](hooks::Hook& h) { h.on_stmt_after({s, pre_v, post_v, callstack_, rte}); });
    }
    return post;
  }

  // Handlers in configuration order; the first that answers wins.
  D transfer(const Stmt& s, const D& st) {
    std::optional<D> r;
    if (!cfg_.test_faulty_domain.empty()) r = faulty_transfer(s, st);
    if (!r) r = domain_transfer(s, st);
    if (!r) throw InternalError("unhandled statement", s.loc);
    return *r;
  }

  // Test-only defective transfer functions, used to exercise the
  // unsoundness detector and differential reduction.
  std::optional<D> faulty_transfer(const Stmt& s, const D& st) {
    if (s.kind != Stmt::Kind::assign && s.kind != Stmt::Kind::decl) return std::nullopt;
    const Expr& e = *s.expr;
    if (cfg_.test_faulty_domain == "bottom-on-const-assign" && e.kind == Expr::Kind::int_lit)
      return D::bottom();
    if (cfg_.test_faulty_domain == "unsound-rand" && e.kind == Expr::Kind::rand) {
      Var v = local(s.slot);
      D base = s.kind == Stmt::Kind::decl ? st.add_var(v) : st;
      return base.assign(v, *lit(e.hi));
    }
    return std::nullopt;
  }

  std::optional<D> domain_transfer(const Stmt& s, const D& in) {
    D st = in;
    switch (s.kind) {
      case Stmt::Kind::decl:
      case Stmt::Kind::assign: {
        ExprPtr e = walk(*s.expr, st);
        if (st.is_bottom()) return st;
        Var v = local(s.slot);
        if (s.kind == Stmt::Kind::decl) st = st.add_var(v);
        return st.assign(v, *e);
      }
      case Stmt::Kind::print: return st;
      case Stmt::Kind::assert_: {
        ExprPtr c = walk(*s.expr, st);
        if (st.is_bottom()) return st;
        D holds = st.assume(*c, true);
        D fails = st.assume(*c, false);
        Verdict v = fails.is_bottom() ? Verdict::safe
                    : holds.is_bottom() ? Verdict::must_fail
                                        : Verdict::may_fail;
        check(CheckKind::assert_failure, s.loc, v,
              v == Verdict::safe        ? "condition holds"
              : v == Verdict::must_fail ? "condition is false"
                                        : "condition may be false");
        return holds;
      }
      case Stmt::Kind::if_: {
        ExprPtr c = walk(*s.expr, st);
        if (st.is_bottom()) return st;
        D t = exec_block(s.then_block, st.assume(*c, true));
        D f = exec_block(s.else_block, st.assume(*c, false));
        return t.join(f);
      }
      case Stmt::Kind::while_: return exec_while(s, st);
      case Stmt::Kind::return_: {
        if (s.expr) {
          ExprPtr e = walk(*s.expr, st);
          if (st.is_bottom()) return st;
          Var ret = local(frame().fn->return_slot());
          auto r = st.add_var(ret).assign(ret, *e);
          if (!r) return std::nullopt;
          st = *r;
        }
        returns_.back() = returns_.back() ? returns_.back()->join(st) : st;
        return D::bottom();
      }
      case Stmt::Kind::call: return exec_call(s, st);
    }
    return std::nullopt;
  }

  D loop_body(const Stmt& s, const D& head) {
    D st = head;
    ExprPtr c = walk(*s.expr, st);
    if (st.is_bottom()) return st;
    return exec_block(s.then_block, st.assume(*c, true));
  }

  void iteration_event(const Stmt& s, int k) {
    iterations_.back() = k;
    emit([&](hooks::Hook& h) { h.on_loop_iteration({s, k, callstack_}); });
  }

  D exec_while(const Stmt& s, const D& entry) {
    iterations_.push_back(0);
    auto saved_returns = returns_.back();
    ++non_final_;
    D head = entry;
    D next = entry;
    int k = 0;
    for (;; ++k) {
      if (k >= cfg_.iteration_cap) {
        --non_final_;
        iterations_.pop_back();
        throw InternalError("fixpoint divergence: loop not stable after " + std::to_string(k) +
                                " iterations",
                            s.loc);
      }
      iteration_event(s, k);
      next = entry.join(loop_body(s, head));
      if (next.leq(head)) break;
      head = k < cfg_.widening_delay ? head.join(next) : head.widen(next, th_);
    }
    // Descending passes; a candidate is kept only if it is still a
    // post-fixpoint, so the final pass always runs on an invariant.
    D image = next;
    for (int pass = 0; pass < cfg_.narrowing_passes; ++pass) {
      D cand = head.meet(image);
      if (head.leq(cand)) break;
      iteration_event(s, ++k);
      D cand_image = entry.join(loop_body(s, cand));
      if (!cand_image.leq(cand)) break;
      head = cand;
      image = cand_image;
    }
    --non_final_;
    returns_.back() = saved_returns;
    iteration_event(s, ++k);
    inflight_.back().pre = &head;
    D st = head;
    ExprPtr c = walk(*s.expr, st);
    if (!st.is_bottom()) exec_block(s.then_block, st.assume(*c, true));
    D exit = st.is_bottom() ? st : st.assume(*c, false);
    iterations_.pop_back();
    return exit;
  }

  D exec_call(const Stmt& s, D st) {
    std::vector<ExprPtr> args;
    for (const auto& a : s.args) {
      args.push_back(walk(*a, st));
      if (st.is_bottom()) return st;
    }
    if (s.callee == frontend::builtin_planted_crash) {
      Interval divisor = st.eval(*args.at(1));
      if (!divisor.is_bottom() && divisor.lo() < 0)
        throw InternalError("planted crash: modulo by negative divisor " + divisor.to_string(),
                            s.loc);
      return st;
    }
    const FuncDef* fn = prog_.find(s.callee);
    if (!fn) throw InternalError("call to unknown function '" + s.callee + "'", s.loc);
    auto occurrences = std::count_if(callstack_.begin(), callstack_.end(),
                                     [&](const Frame& f) { return f.function == fn->name; });
    if (occurrences >= cfg_.recursion_limit) {
      assumption("recursion truncated at " + fn->name + " (" + s.loc.to_string() +
                 ", limit " + std::to_string(cfg_.recursion_limit) +
                 "): return value treated as top");
      if (!s.has_result) return st;
      Var t = local(s.slot);
      return st.add_var(t).forget(t);
    }
    const std::size_t depth = frames_.size();
    frames_.push_back({fn, depth, {}, {}});
    callstack_.push_back({fn->name, s.loc});
    returns_.emplace_back();
    for (std::size_t i = 0; i < fn->params.size(); ++i) {
      Var v = var_id(depth, static_cast<int>(i));
      auto r = st.add_var(v).assign(v, *args[i]);
      if (!r) throw InternalError("unhandled statement", s.loc);
      st = *r;
      declare(fn->params[i].name, v);
    }
    Var ret = var_id(depth, fn->return_slot());
    frame().owned.push_back(ret);
    enter_function(&s, fn->name);
    auto start = Clock::now();
    D out = exec_block(fn->body, st);
    if (fn->returns_value && !out.is_bottom()) out = out.add_var(ret).forget(ret);
    if (returns_.back()) out = out.join(*returns_.back());
    exit_function(fn->name, Clock::now() - start);
    std::vector<Var> owned = frame().owned;
    returns_.pop_back();
    callstack_.pop_back();
    frames_.pop_back();
    if (s.has_result && !out.is_bottom()) {
      Var t = local(s.slot);
      auto ret_read = std::make_shared<Expr>();
      ret_read->kind = Expr::Kind::var;
      ret_read->slot = static_cast<int>(ret);
      ret_read->type = IntType::math;
      auto r = out.add_var(t).assign(t, *ret_read);
      if (!r) throw InternalError("unhandled statement", s.loc);
      out = *r;
    }
    for (Var v : owned) out = out.remove_var(v);
    return out;
  }

  const Program& prog_;
  const Configuration& cfg_;
  hooks::HookBus* bus_;
  ExecutionControl* ctl_;
  ThresholdSet th_;
  const FuncDef* entry_ = nullptr;

  std::vector<ActiveFrame> frames_;
  Callstack callstack_;
  std::vector<std::optional<D>> returns_{std::optional<D>{}};
  std::vector<InFlight> inflight_;
  std::vector<std::size_t> top_scope_len_;
  std::vector<int> iterations_;
  int non_final_ = 0;
  std::size_t unsafe_seen_ = 0;

  std::map<std::tuple<frontend::SourceLoc, CheckKind, std::vector<std::string>>, CheckRecord>
      checks_;
  std::vector<std::string> assumptions_;
  std::set<std::string> assumption_set_;
};

template <NumericDomain D>
void run_with(const Program& p, const Configuration& c, const AnalysisOptions& o,
              const ThresholdSet& th, Report& report) {
  Interpreter<D> interp(p, c, o, th);
  try {
    interp.run();
  } catch (const InternalError& e) {
    report.crash = CrashInfo{e.what(), e.where()};
  }
  report.checks = interp.checks();
  report.assumptions = interp.assumptions();
}

}  // namespace

Report analyze(const Program& program, const Configuration& config, const AnalysisOptions& opts) {
  if (!program.find(program.entry))
    throw std::invalid_argument("entry function '" + program.entry + "' not found");
  auto start = Clock::now();
  Report report;
  report.tool_version = tool_version();
  report.program = opts.program_id;
  report.config = config.name;

  ThresholdSet th;
  if (config.thresholds == ThresholdMode::collected) {
    std::optional<ThresholdSet> collected;
    if (opts.hooks) collected = opts.hooks->thresholds(program);
    if (collected) {
      th = *collected;
    } else if (opts.warnings) {
      opts.warnings->push_back(
          "configuration asks for collected thresholds but no thresholds hook is registered; "
          "using the static set");
    }
  }
  if (opts.hooks) opts.hooks->dispatch([&](hooks::Hook& h) { h.on_start(program); });

  switch (config.numeric) {
    case NumericKind::intervals:
      run_with<domains::IntervalEnv>(program, config, opts, th, report);
      break;
    case NumericKind::zones: run_with<domains::Zone>(program, config, opts, th, report); break;
    case NumericKind::product:
      run_with<domains::ProductState>(program, config, opts, th, report);
      break;
  }
  report.selectivity = compute_selectivity(report.checks);
  auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
  report.time_ms = static_cast<double>(us) / 1000.0;
  if (opts.hooks) {
    opts.hooks->dispatch([&](hooks::Hook& h) { h.on_finish(report); });
    report.hook_failures = opts.hooks->failures();
  }
  return report;
}

}  // namespace absint::engine
