#include "absint/hooks/coverage.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace absint::hooks {

using frontend::Stmt;

void CoverageHook::on_start(const frontend::Program& p) {
  program_ = &p;
  reached_.clear();
}

void CoverageHook::on_stmt_before(const StmtBefore& e) {
  if (!e.pre.is_bottom()) reached_.insert(e.stmt.id);
}

CoverageSummary CoverageHook::summary() const {
  CoverageSummary s;
  if (!program_) return s;
  const auto& p = *program_;

  std::set<std::string> reachable;
  std::vector<std::string> work{p.entry};
  while (!work.empty()) {
    std::string f = work.back();
    work.pop_back();
    const frontend::FuncDef* fn = p.find(f);
    if (!fn || !reachable.insert(f).second) continue;
    frontend::for_each_stmt(fn->body, [&](const Stmt& st) {
      if (st.kind == Stmt::Kind::call) work.push_back(st.callee);
    });
  }

  std::size_t reached = 0, total = 0;
  for (const auto& fn : p.functions) {
    FunctionCoverage fc;
    fc.name = fn.name;
    fc.reachable = reachable.count(fn.name) != 0;
    frontend::for_each_stmt(fn.body, [&](const Stmt& st) {
      ++fc.total;
      if (reached_.count(st.id)) ++fc.reached;
      else fc.uncovered.push_back(st.loc);
    });
    fc.never_analyzed = fc.reached == 0;
    if (fc.reachable) {
      reached += fc.reached;
      total += fc.total;
    }
    s.functions.push_back(std::move(fc));
  }
  s.overall = total == 0 ? 1.0 : static_cast<double>(reached) / static_cast<double>(total);
  return s;
}

std::string coverage_json(const CoverageSummary& s) {
  nlohmann::ordered_json j;
  j["overall"] = s.overall;
  j["functions"] = nlohmann::ordered_json::array();
  for (const auto& f : s.functions) {
    nlohmann::ordered_json fj;
    fj["name"] = f.name;
    fj["reached"] = f.reached;
    fj["total"] = f.total;
    fj["ratio"] = f.ratio();
    fj["reachable"] = f.reachable;
    fj["never_analyzed"] = f.never_analyzed;
    fj["uncovered"] = nlohmann::ordered_json::array();
    for (const auto& l : f.uncovered) fj["uncovered"].push_back(l.to_string());
    j["functions"].push_back(fj);
  }
  return j.dump(2) + "\n";
}

std::string coverage_text(const CoverageSummary& s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(0);
  for (const auto& f : s.functions) {
    out << "coverage " << f.name << ": " << f.reached << "/" << f.total << " ("
        << f.ratio() * 100 << "%)";
    if (f.never_analyzed) out << " never analyzed";
    out << "\n";
    for (const auto& l : f.uncovered) out << "  uncovered " << l.to_string() << "\n";
  }
  out << "coverage overall: " << s.overall * 100 << "%\n";
  return out.str();
}

}  // namespace absint::hooks
