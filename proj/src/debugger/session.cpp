#include "absint/debugger/session.hpp"

#include <filesystem>
#include <algorithm>
#include <sstream>

#include "absint/frontend/printer.hpp"

namespace absint::debugger {

using engine::PausePoint;

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::entry: return "entry";
    case StopReason::breakpoint: return "breakpoint";
    case StopReason::alarm: return "alarm";
    case StopReason::step: return "step";
    case StopReason::finished: return "finished";
  }
  return "?";
}

namespace {

bool same_file(const std::string& want, const std::string& have) {
  if (want.empty() || want == have) return true;
  namespace fs = std::filesystem;
  return fs::path(want).filename() == fs::path(have).filename();
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

}  // namespace

Session::Session(frontend::Program program, engine::Configuration config, std::string program_id,
                 std::string source)
    : program_(std::move(program)), config_(std::move(config)), program_id_(std::move(program_id)) {
  std::istringstream in(source);
  for (std::string l; std::getline(in, l);) lines_.push_back(l);
  start_worker();
}

Session::~Session() { quit(); }

void Session::start_worker() {
  started_ = true;
  {
    std::lock_guard lk(mu_);
    worker_turn_ = true;
  }
  worker_ = std::thread([this] { worker_main(); });
  std::unique_lock lk(mu_);
  cv_.wait(lk, [&] { return !worker_turn_; });
}

void Session::worker_main() {
  engine::Report rep;
  bool aborted = false;
  try {
    engine::AnalysisOptions opts;
    opts.program_id = program_id_;
    opts.control = this;
    rep = engine::analyze(program_, config_, opts);
  } catch (const AnalysisAborted&) {
    aborted = true;
  } catch (const std::exception& e) {
    error_ = e.what();
  }
  std::lock_guard lk(mu_);
  if (!aborted) report_ = std::move(rep);
  stop_ = StopState{};
  stop_.reason = StopReason::finished;
  current_ = nullptr;
  worker_turn_ = false;
  cv_.notify_all();
}

void Session::run_until_stopped() {
  std::unique_lock lk(mu_);
  worker_turn_ = true;
  cv_.notify_all();
  cv_.wait(lk, [&] { return !worker_turn_; });
}

void Session::quit() {
  if (!started_) return;
  if (!finished()) {
    abort_ = true;
    run_until_stopped();
  }
  if (worker_.joinable()) worker_.join();
}

void Session::pause(const PausePoint& p) {
  StopState st;
  if (!should_stop(p, st)) return;
  std::unique_lock lk(mu_);
  current_ = &p;
  stop_ = std::move(st);
  worker_turn_ = false;
  cv_.notify_all();
  cv_.wait(lk, [&] { return worker_turn_; });
  current_ = nullptr;
  if (abort_) throw AnalysisAborted{};
}

bool Session::matches_location(const frontend::Stmt& s) const {
  for (const auto& bp : bps_)
    if (auto* l = std::get_if<LocationBp>(&bp))
      if (l->line == s.loc.line && same_file(l->file, s.loc.file)) return true;
  return false;
}

bool Session::should_stop(const PausePoint& p, StopState& st) {
  const std::size_t depth = p.callstack ? p.callstack->size() : 0;
  auto fill = [&](StopReason r) {
    st.reason = r;
    if (p.stmt) {
      st.loc = p.stmt->loc;
      st.stmt_kind = frontend::kind_name(p.stmt->kind);
    }
    if (p.callstack) st.callstack = *p.callstack;
    if (p.iterations) st.iterations = *p.iterations;
    return true;
  };

  switch (p.kind) {
    case PausePoint::Kind::function_enter:
      for (const auto& bp : bps_)
        if (auto* f = std::get_if<FunctionBp>(&bp); f && f->name == p.function)
          fn_pending_.push_back(f->name);
      return false;

    case PausePoint::Kind::alarm:
      for (const auto& bp : bps_)
        if (std::holds_alternative<AlarmBp>(bp)) {
          fill(StopReason::alarm);
          st.alarm = *p.alarm;
          st.breakpoint = "#alarm";
          return true;
        }
      return false;

    case PausePoint::Kind::expr_evaluated:
      if (mode_ != RunMode::step) return false;
      fill(StopReason::step);
      st.stmt_kind.clear();
      if (p.expr) {
        st.expr = frontend::print_expr(*p.expr);
        st.loc = p.expr->loc;
      }
      return true;

    case PausePoint::Kind::stmt_before: break;
  }

  if (!entry_seen_) {
    entry_seen_ = true;
    return fill(StopReason::entry);
  }
  const std::string& fn = p.callstack->back().function;
  for (auto it = fn_pending_.begin(); it != fn_pending_.end(); ++it)
    if (*it == fn) {
      fn_pending_.erase(it);
      fill(StopReason::breakpoint);
      st.breakpoint = "function " + fn;
      return true;
    }
  if (matches_location(*p.stmt)) {
    fill(StopReason::breakpoint);
    st.breakpoint = "line " + std::to_string(p.stmt->loc.line);
    return true;
  }
  for (const auto& bp : bps_)
    if (auto* k = std::get_if<KindBp>(&bp); k && k->kind == frontend::kind_name(p.stmt->kind)) {
      fill(StopReason::breakpoint);
      st.breakpoint = "@" + k->kind;
      return true;
    }
  switch (mode_) {
    case RunMode::step: return fill(StopReason::step);
    case RunMode::next: return depth <= mode_depth_ && fill(StopReason::step);
    case RunMode::finish: return depth < mode_depth_ && fill(StopReason::step);
    case RunMode::continue_: return false;
  }
  return false;
}

bool Session::has_statement_at(const std::string& file, int line) const {
  bool found = false;
  for (const auto& f : program_.functions)
    frontend::for_each_stmt(f.body, [&](const frontend::Stmt& s) {
      if (s.loc.line == line && same_file(file, s.loc.file)) found = true;
    });
  return found;
}

std::optional<std::string> Session::add_breakpoint(const Breakpoint& bp) {
  bps_.push_back(bp);
  if (auto* l = std::get_if<LocationBp>(&bp); l && !has_statement_at(l->file, l->line))
    return "warning: no statement at " + to_string(bp) + "; breakpoint will not be hit";
  if (auto* f = std::get_if<FunctionBp>(&bp); f && !program_.find(f->name))
    return "warning: no function named '" + f->name + "'";
  return std::nullopt;
}

void Session::clear_breakpoints() {
  bps_.clear();
  fn_pending_.clear();
}

const StopState& Session::resume(RunMode mode) {
  if (finished()) return stop_;
  mode_ = mode;
  mode_depth_ = stop_.callstack.size();
  run_until_stopped();
  return stop_;
}

std::vector<std::string> Session::scope() const {
  if (!current_ || !current_->state) return {};
  return current_->state->variables();
}

std::vector<std::string> Session::print(const std::string& var) const {
  if (finished()) throw SessionError("analysis complete");
  if (!current_ || !current_->state) throw SessionError("no abstract state at this point");
  const engine::StateView& s = *current_->state;
  if (var.empty()) {
    std::vector<std::string> out;
    std::istringstream in(s.print());
    for (std::string l; std::getline(in, l);) out.push_back(l);
    if (out.empty()) out.push_back("(no variables)");
    return out;
  }
  auto vars = s.variables();
  if (std::find(vars.begin(), vars.end(), var) == vars.end())
    throw SessionError("unknown variable '" + var + "'; in scope: " +
                       (vars.empty() ? std::string("(none)") : join(vars, ", ")));
  return s.describe(var);
}

std::vector<std::string> Session::backtrace() const {
  std::vector<std::string> out;
  const auto& cs = stop_.callstack;
  for (std::size_t i = cs.size(); i-- > 0;) {
    std::string where = i + 1 == cs.size()
                            ? (stop_.loc ? stop_.loc->to_string() : cs[i].call_site.to_string())
                            : cs[i + 1].call_site.to_string();
    out.push_back("#" + std::to_string(cs.size() - 1 - i) + " " + cs[i].function + " at " + where);
  }
  return out;
}

std::string Session::source_line(const frontend::SourceLoc& loc) const {
  if (loc.line < 1 || static_cast<std::size_t>(loc.line) > lines_.size()) return {};
  return std::to_string(loc.line) + " | " + lines_[static_cast<std::size_t>(loc.line) - 1];
}

std::string Session::where() const {
  if (finished()) return "analysis complete";
  std::string out = stop_.loc ? stop_.loc->to_string() : std::string("?");
  if (!stop_.callstack.empty()) out += " in " + stop_.callstack.back().function;
  if (stop_.loc) {
    std::string src = source_line(*stop_.loc);
    if (!src.empty()) out += "\n  " + src;
  }
  return out;
}

std::string Session::banner() const {
  std::ostringstream out;
  if (finished()) {
    if (error_) {
      out << "analysis failed: " << *error_;
      return out.str();
    }
    out << "analysis complete: " << report_.checks.size() << " checks, " << report_.safe_count()
        << " safe, " << report_.alarm_count() << " alarm, selectivity "
        << engine::format_selectivity(report_.selectivity);
    if (report_.crash) out << "\nanalysis crashed: " << report_.crash->message;
    return out.str();
  }
  out << "stopped (" << to_string(stop_.reason) << ") at "
      << (stop_.loc ? stop_.loc->to_string() : std::string("?"));
  if (!stop_.callstack.empty()) out << " in " << stop_.callstack.back().function;
  if (!stop_.iterations.empty()) out << ", loop iteration " << stop_.iterations.back();
  if (stop_.alarm)
    out << "\n  alarm: " << engine::to_string(stop_.alarm->kind) << " at "
        << stop_.alarm->loc.to_string() << ": " << stop_.alarm->detail
        << "\n  showing the state before the statement";
  else if (stop_.reason == StopReason::breakpoint)
    out << "\n  breakpoint: " << stop_.breakpoint;
  if (!stop_.expr.empty()) out << "\n  evaluated: " << stop_.expr;
  if (stop_.loc) {
    std::string src = source_line(*stop_.loc);
    if (!src.empty()) out << "\n  " << src;
  }
  return out.str();
}

bool Session::execute(const DebugCommand& cmd, std::string& output) {
  using K = DebugCommand::Kind;
  auto run = [&](RunMode m) {
    if (finished()) {
      output = "analysis complete";
      return;
    }
    resume(m);
    output = banner();
  };
  switch (cmd.kind) {
    case K::break_: {
      auto note = add_breakpoint(cmd.bp);
      output = "breakpoint " + std::to_string(bps_.size()) + ": " + to_string(cmd.bp);
      if (note) output += "\n" + *note;
      return true;
    }
    case K::continue_: run(RunMode::continue_); return true;
    case K::next: run(RunMode::next); return true;
    case K::step: run(RunMode::step); return true;
    case K::finish: run(RunMode::finish); return true;
    case K::print:
      try {
        output = join(print(cmd.var), "\n");
      } catch (const SessionError& e) {
        output = e.what();
      }
      return true;
    case K::backtrace:
      output = finished() ? "analysis complete" : join(backtrace(), "\n");
      return true;
    case K::where: output = where(); return true;
    case K::help: output = command_help(); return true;
    case K::quit:
      quit();
      output.clear();
      return false;
  }
  return true;
}

}  // namespace absint::debugger
