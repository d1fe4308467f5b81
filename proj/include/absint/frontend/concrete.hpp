#pragma once

// Reference concrete interpreter for MiniImp. Used as the soundness oracle
// for the abstract interpreter.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absint/frontend/ast.hpp"

namespace absint::frontend {

enum class RuntimeErrorKind { overflow, div_by_zero, mod_by_zero, assert_failure };

const char* to_string(RuntimeErrorKind k);

struct InputResolver {
  // Value for the occurrence-th evaluation (0-based, per site) of a rand site.
  std::function<std::int64_t(const Expr& site, std::size_t occurrence)> rand;
  // Value for entry parameter `index`.
  std::function<std::int64_t(std::size_t index, const std::string& name)> param;
};

// Called before each statement with the live locals of the current frame
// as (slot, value) pairs.
using ConcreteObserver = std::function<void(
    const FuncDef& fn, const Stmt& stmt, const std::vector<std::pair<int, std::int64_t>>& live)>;

struct ConcreteOptions {
  std::uint64_t step_budget = 1'000'000;
  std::size_t max_call_depth = 10'000;
  ConcreteObserver observer;
};

struct ConcreteOutcome {
  enum class Status { normal, runtime_error, inconclusive };
  Status status = Status::normal;
  // Last value of each entry-function variable (by name, innermost binding wins).
  std::map<std::string, std::int64_t> final_values;
  std::optional<RuntimeErrorKind> error;
  std::optional<SourceLoc> error_loc;
  std::uint64_t steps = 0;
  std::vector<std::string> printed;
};

// Throws std::invalid_argument when the entry function is missing or an
// input resolver returns a value outside the rand range / i32.
ConcreteOutcome interpret_concrete(const Program& program, const InputResolver& inputs,
                                   const ConcreteOptions& opts = {});

}  // namespace absint::frontend
