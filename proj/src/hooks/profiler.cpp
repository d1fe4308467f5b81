#include "absint/hooks/profiler.hpp"

#include <regex>
#include <sstream>

#include "json.hpp"

namespace absint::hooks {

using std::chrono::duration_cast;
using std::chrono::microseconds;
using std::chrono::nanoseconds;

void ProfilerHook::on_stmt_before(const StmtBefore& e) {
  if (e.stmt.kind == frontend::Stmt::Kind::while_) loops_.push_back({&e.stmt, Clock::now(), 0});
}

void ProfilerHook::on_loop_iteration(const LoopIteration& e) {
  if (!loops_.empty() && loops_.back().stmt == &e.loop) loops_.back().iterations = e.index + 1;
}

void ProfilerHook::on_stmt_after(const StmtAfter& e) {
  if (e.stmt.kind != frontend::Stmt::Kind::while_ || loops_.empty()) return;
  OpenLoop l = loops_.back();
  loops_.pop_back();
  LoopProfile& lp = loop_stats_[e.stmt.loc];
  lp.loc = e.stmt.loc;
  ++lp.visits;
  lp.iterations.push_back(l.iterations);
  lp.total += duration_cast<nanoseconds>(Clock::now() - l.start);
}

void ProfilerHook::on_function_enter(const FunctionEnter& e) {
  frames_.push_back({engine::callstack_names(e.callstack), Clock::now(), {}});
}

void ProfilerHook::on_function_exit(const FunctionExit&) {
  if (frames_.empty()) return;
  OpenFrame f = frames_.back();
  frames_.pop_back();
  auto total = Clock::now() - f.start;
  FunctionProfile& fp = functions_[f.stack];
  fp.callstack = f.stack;
  ++fp.calls;
  fp.total += duration_cast<nanoseconds>(total);
  fp.self += duration_cast<nanoseconds>(total - f.children);
  if (!frames_.empty()) frames_.back().children += total;
}

Profile ProfilerHook::profile() const {
  auto now = Clock::now();
  std::map<std::vector<std::string>, FunctionProfile> fns = functions_;
  // Charge open frames up to now, innermost first.
  Clock::duration inner{0};
  for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
    auto total = now - it->start;
    FunctionProfile& fp = fns[it->stack];
    fp.callstack = it->stack;
    fp.total += duration_cast<nanoseconds>(total);
    fp.self += duration_cast<nanoseconds>(total - it->children - inner);
    inner = total;
  }
  Profile p;
  for (const auto& [_, l] : loop_stats_) p.loops.push_back(l);
  for (const auto& [_, f] : fns) p.functions.push_back(f);
  return p;
}

std::string ProfilerHook::folded() const {
  std::ostringstream out;
  for (const auto& f : profile().functions) {
    std::string stack;
    for (const auto& n : f.callstack) stack += (stack.empty() ? "" : ";") + n;
    out << stack << " " << duration_cast<microseconds>(f.self).count() << "\n";
  }
  return out.str();
}

std::string profile_json(const Profile& p) {
  using J = nlohmann::ordered_json;
  J j;
  j["loops"] = J::array();
  for (const auto& l : p.loops) {
    J lj;
    lj["loc"] = l.loc.to_string();
    lj["visits"] = l.visits;
    lj["iterations"] = l.iterations;
    lj["total_us"] = duration_cast<microseconds>(l.total).count();
    j["loops"].push_back(lj);
  }
  j["functions"] = J::array();
  for (const auto& f : p.functions) {
    J fj;
    fj["callstack"] = f.callstack;
    fj["calls"] = f.calls;
    fj["self_us"] = duration_cast<microseconds>(f.self).count();
    fj["total_us"] = duration_cast<microseconds>(f.total).count();
    j["functions"].push_back(fj);
  }
  return j.dump(2) + "\n";
}

bool valid_folded(const std::string& text) {
  static const std::regex line(R"(^[^; ]+(;[^; ]+)* [0-9]+$)");
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l))
    if (!std::regex_match(l, line)) return false;
  return true;
}

}  // namespace absint::hooks
