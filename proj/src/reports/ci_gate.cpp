#include "absint/reports/ci_gate.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "absint/reports/report_io.hpp"

namespace absint::reports {

namespace fs = std::filesystem;

std::string GateResult::summary() const {
  std::ostringstream out;
  const char* verdict = exit_code == 0   ? "PASS"
                        : exit_code == 1 ? "FAIL"
                        : exit_code == 2 ? "ERROR"
                                         : "NO BASELINE";
  out << "ci-gate: " << verdict << "\n";
  for (const auto& f : failures) out << "  regression: " << f << "\n";
  for (const auto& i : improvements) out << "  improvement: " << i << "\n";
  for (const auto& n : notes) out << "  note: " << n << "\n";
  return out.str();
}

namespace {

void copy_reports(const std::string& from, const std::string& to) {
  fs::create_directories(to);
  for (const auto& name : report_files(from))
    fs::copy_file(fs::path(from) / name, fs::path(to) / name, fs::copy_options::overwrite_existing);
}

}  // namespace

GateResult ci_gate(const std::string& baseline_dir, const std::string& current_dir,
                   const GatePolicy& policy) {
  GateResult g;
  if (!fs::is_directory(current_dir)) {
    g.exit_code = 2;
    g.notes.push_back("current results directory '" + current_dir + "' does not exist");
    return g;
  }
  if (!fs::is_directory(baseline_dir) || report_files(baseline_dir).empty()) {
    if (policy.update_baseline) {
      copy_reports(current_dir, baseline_dir);
      g.notes.push_back("baseline created in '" + baseline_dir + "'");
      return g;
    }
    g.exit_code = 3;
    g.notes.push_back("no baseline reports in '" + baseline_dir +
                      "'; create one by re-running with --update-baseline");
    return g;
  }

  auto base_files = report_files(baseline_dir);
  std::set<std::string> current_set;
  for (const auto& f : report_files(current_dir)) current_set.insert(f);

  for (const auto& name : base_files) {
    if (!current_set.count(name)) {
      g.failures.push_back(name + ": no current report");
      continue;
    }
    Report base, cur;
    try {
      base = read_report((fs::path(baseline_dir) / name).string());
    } catch (const std::exception& e) {
      g.exit_code = 2;
      g.notes.push_back(std::string("baseline ") + e.what());
      continue;
    }
    try {
      cur = read_report((fs::path(current_dir) / name).string());
    } catch (const std::exception& e) {
      g.exit_code = 2;
      g.notes.push_back(e.what());
      continue;
    }
    ReportDiff d = diff_reports(base, cur, policy.key_mode);
    for (const auto& k : d.added_alarms) g.failures.push_back(name + ": new alarm " + k.to_string());
    for (const auto& k : d.removed_safe)
      g.failures.push_back(name + ": lost safe check " + k.to_string());
    for (const auto& a : d.added_assumptions) g.failures.push_back(name + ": new assumption " + a);
    if (d.crash == CrashTransition::appeared)
      g.failures.push_back(name + ": new crash: " + cur.crash->message);
    if (base.selectivity && cur.selectivity &&
        *cur.selectivity < *base.selectivity - policy.selectivity_tolerance)
      g.failures.push_back(name + ": selectivity dropped from " +
                           engine::format_selectivity(base.selectivity) + " to " +
                           engine::format_selectivity(cur.selectivity));
    for (const auto& k : d.removed_alarms)
      g.improvements.push_back(name + ": removed alarm " + k.to_string());
    for (const auto& k : d.added_safe)
      g.improvements.push_back(name + ": new safe check " + k.to_string());
    for (const auto& a : d.removed_assumptions)
      g.improvements.push_back(name + ": assumption gone " + a);
    if (d.crash == CrashTransition::disappeared)
      g.improvements.push_back(name + ": crash fixed");
    if (d.time_delta_ms != 0) {
      std::ostringstream t;
      t << name << ": time " << (d.time_delta_ms > 0 ? "+" : "") << d.time_delta_ms << " ms";
      g.notes.push_back(t.str());
    }
  }
  for (const auto& name : current_set)
    if (std::find(base_files.begin(), base_files.end(), name) == base_files.end()) {
      try {
        read_report((fs::path(current_dir) / name).string());
        g.notes.push_back(name + ": not in baseline");
      } catch (const std::exception& e) {
        g.exit_code = 2;
        g.notes.push_back(e.what());
      }
    }

  if (g.exit_code == 0 && !g.failures.empty()) g.exit_code = 1;
  if (g.exit_code == 0 && policy.update_baseline) {
    copy_reports(current_dir, baseline_dir);
    g.notes.push_back("baseline updated");
  }
  return g;
}

}  // namespace absint::reports
