#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "absint/hooks/hook.hpp"

namespace absint::hooks {

struct Warning {
  std::string detector;
  frontend::SourceLoc loc;
  std::vector<std::string> callstack;
  std::string message;

  std::string to_string() const;
};

// Flags assignments whose transfer function turned a reachable state into
// bottom without any runtime error to justify it.
class UnsoundnessHook : public Hook {
 public:
  std::string name() const override { return "unsoundness"; }
  void on_stmt_after(const StmtAfter& e) override;
  const std::vector<Warning>& warnings() const { return warnings_; }

 private:
  std::vector<Warning> warnings_;
};

// Flags sub-expressions whose value spans the whole i32 range. Plain reads
// of entry parameters are exempt: they are unconstrained by design.
class ImprecisionHook : public Hook {
 public:
  std::string name() const override { return "imprecision"; }
  void on_expr_evaluated(const ExprEvaluated& e) override;
  const std::vector<Warning>& warnings() const { return warnings_; }

 private:
  std::vector<Warning> warnings_;
  std::set<std::tuple<frontend::SourceLoc, std::vector<std::string>>> seen_;
};

}  // namespace absint::hooks
