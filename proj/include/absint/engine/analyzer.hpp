#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "absint/engine/config.hpp"
#include "absint/engine/control.hpp"
#include "absint/engine/report.hpp"
#include "absint/frontend/ast.hpp"

namespace absint::hooks {
class HookBus;
}

namespace absint::engine {

// Analyzer fault. Caught by analyze() and recorded as the report's crash.
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& msg,
                         std::optional<frontend::SourceLoc> loc = std::nullopt)
      : std::runtime_error(msg), loc_(std::move(loc)) {}
  const std::optional<frontend::SourceLoc>& where() const { return loc_; }

 private:
  std::optional<frontend::SourceLoc> loc_;
};

struct AnalysisOptions {
  std::string program_id;
  hooks::HookBus* hooks = nullptr;
  ExecutionControl* control = nullptr;
  // Non-fatal notes for the user (not part of the report).
  std::vector<std::string>* warnings = nullptr;
};

// Throws std::invalid_argument when the entry function is missing.
Report analyze(const frontend::Program& program, const Configuration& config,
               const AnalysisOptions& opts = {});

}  // namespace absint::engine
