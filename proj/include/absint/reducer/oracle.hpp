#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "absint/engine/report.hpp"
#include "absint/reducer/reduce.hpp"

namespace absint::reducer {

inline constexpr std::chrono::seconds default_timeout{30};

struct ProcessResult {
  int exit_code = -1;  // -1 when killed or not started
  bool timed_out = false;
  std::string out, err;
};

// Runs argv[0] (PATH lookup) with captured output; the whole process group
// is killed at the deadline.
ProcessResult run_process(const std::vector<std::string>& argv, std::chrono::milliseconds timeout);

// Writes each candidate to a fresh file in a private directory removed on
// destruction.
class Scratch {
 public:
  Scratch();
  ~Scratch();
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  std::string write(const std::string& text);
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  std::atomic<std::size_t> counter_{0};
};

// `cmd <candidate path>` through /bin/sh; exit 0 is interesting. Timeouts
// are uninteresting.
TextOracle make_command_oracle(const std::string& cmd, Scratch& scratch,
                               std::chrono::milliseconds timeout = default_timeout);

// analyzer exits with the internal-error code and stderr matches pattern.
TextOracle make_crash_oracle(const std::string& analyzer, const std::string& config,
                             const std::string& pattern, Scratch& scratch,
                             std::chrono::milliseconds timeout = default_timeout);

struct CheckSpec {
  std::string file;
  int line = 0;
  engine::CheckKind kind = engine::CheckKind::integer_overflow;
};
// "file:line:Kind"; throws std::invalid_argument.
CheckSpec parse_check_spec(const std::string& text);

// Both analyses finish without crash and disagree: with a check, on its
// status; without, some check is safe under A and an alarm under B.
TextOracle make_differential_oracle(const std::string& analyzer, const std::string& config_a,
                                    const std::string& config_b,
                                    const std::optional<CheckSpec>& check, Scratch& scratch,
                                    std::chrono::milliseconds timeout = default_timeout);

// The same verdict test on two parsed reports; exposed for tests.
bool reports_disagree(const engine::Report& a, const engine::Report& b,
                      const std::optional<CheckSpec>& check);

}  // namespace absint::reducer
