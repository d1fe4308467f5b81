#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "absint/hooks/hook.hpp"

namespace absint::hooks {

struct FunctionCoverage {
  std::string name;
  std::size_t reached = 0;
  std::size_t total = 0;
  std::vector<frontend::SourceLoc> uncovered;
  bool reachable = false;       // statically callable from the entry function
  bool never_analyzed = false;  // no statement reached
  double ratio() const { return total == 0 ? 1.0 : static_cast<double>(reached) / total; }
};

struct CoverageSummary {
  std::vector<FunctionCoverage> functions;  // program order
  // Sum of reached over sum of total, restricted to reachable functions.
  double overall = 1.0;
};

// A statement is reached when a StmtBefore fires for it with a non-bottom
// state. Usable on partial executions.
class CoverageHook : public Hook {
 public:
  std::string name() const override { return "coverage"; }
  void on_start(const frontend::Program& p) override;
  void on_stmt_before(const StmtBefore& e) override;

  CoverageSummary summary() const;

 private:
  const frontend::Program* program_ = nullptr;
  std::set<std::size_t> reached_;
};

// JSON sidecar text.
std::string coverage_json(const CoverageSummary& s);
std::string coverage_text(const CoverageSummary& s);

}  // namespace absint::hooks
