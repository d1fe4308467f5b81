#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "absint/hooks/hook.hpp"

namespace absint::hooks {

struct LoopProfile {
  frontend::SourceLoc loc;
  std::size_t visits = 0;
  std::vector<int> iterations;  // per visit, iterations until the loop was stable
  std::chrono::nanoseconds total{0};
};

struct FunctionProfile {
  std::vector<std::string> callstack;  // root first
  std::size_t calls = 0;
  std::chrono::nanoseconds self{0};
  std::chrono::nanoseconds total{0};
};

struct Profile {
  std::vector<LoopProfile> loops;          // by location
  std::vector<FunctionProfile> functions;  // by callstack
};

// Abstract-level profiler: loop fixpoint effort and function analysis time
// per callstack. Frames still open are charged up to the query time, so
// profiles of interrupted analyses are meaningful.
class ProfilerHook : public Hook {
 public:
  using Clock = std::chrono::steady_clock;

  std::string name() const override { return "profile"; }
  void on_stmt_before(const StmtBefore& e) override;
  void on_stmt_after(const StmtAfter& e) override;
  void on_loop_iteration(const LoopIteration& e) override;
  void on_function_enter(const FunctionEnter& e) override;
  void on_function_exit(const FunctionExit& e) override;

  Profile profile() const;
  // "main;f;g <self microseconds>" lines, sorted by stack.
  std::string folded() const;

 private:
  struct OpenFrame {
    std::vector<std::string> stack;
    Clock::time_point start;
    Clock::duration children{0};
  };
  struct OpenLoop {
    const frontend::Stmt* stmt;
    Clock::time_point start;
    int iterations = 0;
  };

  std::vector<OpenFrame> frames_;
  std::vector<OpenLoop> loops_;
  std::map<std::vector<std::string>, FunctionProfile> functions_;
  std::map<frontend::SourceLoc, LoopProfile> loop_stats_;
};

std::string profile_json(const Profile& p);

// True when every line is "frame(;frame)* <non-negative integer>".
bool valid_folded(const std::string& text);

}  // namespace absint::hooks
