#pragma once

#include <condition_variable>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "absint/debugger/command.hpp"
#include "absint/engine/analyzer.hpp"

namespace absint::debugger {

enum class StopReason { entry, breakpoint, alarm, step, finished };
const char* to_string(StopReason r);

enum class RunMode { continue_, next, step, finish };

// Snapshot of a stop, valid after the analysis thread moves on.
struct StopState {
  StopReason reason = StopReason::entry;
  std::optional<frontend::SourceLoc> loc;
  std::string stmt_kind;               // empty at expression stops
  std::string expr;                    // step stop inside an expression
  engine::Callstack callstack;
  std::vector<int> iterations;         // enclosing loop iteration indices
  std::optional<engine::CheckRecord> alarm;
  std::string breakpoint;              // matched breakpoint, for reason=breakpoint
};

class SessionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Paused abstract execution of one program. The analysis runs on a worker
// thread that only makes progress inside resume(); every other call happens
// while it is blocked in a pause, so the engine's state views stay valid.
class Session : private engine::ExecutionControl {
 public:
  Session(frontend::Program program, engine::Configuration config, std::string program_id,
          std::string source = {});
  ~Session() override;
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const StopState& stop() const { return stop_; }
  bool finished() const { return stop_.reason == StopReason::finished; }
  // Final report; only meaningful once finished.
  const engine::Report& report() const { return report_; }
  const std::string& program_id() const { return program_id_; }

  // Returns a note when a location breakpoint matches no statement.
  std::optional<std::string> add_breakpoint(const Breakpoint& bp);
  void clear_breakpoints();
  const std::vector<Breakpoint>& breakpoints() const { return bps_; }
  bool has_statement_at(const std::string& file, int line) const;

  const StopState& resume(RunMode mode);

  // Print(v) lines, or the whole state for an empty name. Throws
  // SessionError for unknown variables or when no state is available.
  std::vector<std::string> print(const std::string& var) const;
  std::vector<std::string> scope() const;
  std::vector<std::string> backtrace() const;
  std::string where() const;
  std::string banner() const;

  // Executes one parsed command. Output is ready to print; the return is
  // false after quit.
  bool execute(const DebugCommand& cmd, std::string& output);
  void quit();

 private:
  struct AnalysisAborted {};

  void pause(const engine::PausePoint& p) override;
  bool should_stop(const engine::PausePoint& p, StopState& st);
  bool matches_location(const frontend::Stmt& s) const;
  void worker_main();
  void start_worker();
  void run_until_stopped();
  std::string source_line(const frontend::SourceLoc& loc) const;

  frontend::Program program_;
  engine::Configuration config_;
  std::string program_id_;
  std::vector<std::string> lines_;

  std::vector<Breakpoint> bps_;
  RunMode mode_ = RunMode::step;
  std::size_t mode_depth_ = 0;
  std::vector<std::string> fn_pending_;  // function breakpoints hit, awaiting first stmt

  // Handoff. worker_turn_ is true exactly while the worker may run.
  std::thread worker_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  bool worker_turn_ = false;
  bool abort_ = false;
  bool started_ = false;
  bool entry_seen_ = false;

  const engine::PausePoint* current_ = nullptr;
  StopState stop_;
  engine::Report report_;
  std::optional<std::string> error_;
};

}  // namespace absint::debugger
