#include "absint/reports/diff.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "absint/reports/report_io.hpp"

namespace absint::reports {

namespace fs = std::filesystem;
using engine::CheckStatus;

std::string CheckKey::to_string() const {
  std::string out = file + ":" + std::to_string(line) + ":" + std::to_string(col) + " " +
                    engine::to_string(kind);
  if (!callstack.empty()) {
    std::string stack;
    for (const auto& f : callstack) stack += (stack.empty() ? "" : ";") + f;
    out += " [" + stack + "]";
  }
  return out;
}

bool ReportDiff::empty() const {
  return removed_alarms.empty() && added_alarms.empty() && removed_safe.empty() &&
         added_safe.empty() && removed_assumptions.empty() && added_assumptions.empty() &&
         (crash == CrashTransition::none || crash == CrashTransition::persisted);
}

namespace {

std::map<CheckKey, CheckStatus> statuses(const Report& r, KeyMode mode) {
  std::map<CheckKey, CheckStatus> out;
  for (const auto& c : r.checks) {
    CheckKey k{c.loc.file, c.loc.line, c.loc.col, c.kind,
               mode == KeyMode::callstack ? c.callstack : std::vector<std::string>{}};
    auto [it, fresh] = out.emplace(k, c.status);
    if (!fresh && c.status == CheckStatus::alarm) it->second = CheckStatus::alarm;
  }
  return out;
}

std::vector<CheckKey> only_first(const std::map<CheckKey, CheckStatus>& a,
                                 const std::map<CheckKey, CheckStatus>& b, CheckStatus s) {
  std::vector<CheckKey> out;
  for (const auto& [k, st] : a) {
    if (st != s) continue;
    auto it = b.find(k);
    if (it == b.end() || it->second != s) out.push_back(k);
  }
  return out;
}

std::vector<std::string> minus(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  std::set<std::string> bs(b.begin(), b.end());
  std::set<std::string> out;
  for (const auto& x : a)
    if (!bs.count(x)) out.insert(x);
  return {out.begin(), out.end()};
}

std::string signed_ms(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << (v >= 0 ? "+" : "") << v << " ms";
  return s.str();
}

}  // namespace

ReportDiff diff_reports(const Report& a, const Report& b, KeyMode mode) {
  auto sa = statuses(a, mode), sb = statuses(b, mode);
  ReportDiff d;
  d.removed_alarms = only_first(sa, sb, CheckStatus::alarm);
  d.added_alarms = only_first(sb, sa, CheckStatus::alarm);
  d.removed_safe = only_first(sa, sb, CheckStatus::safe);
  d.added_safe = only_first(sb, sa, CheckStatus::safe);
  d.removed_assumptions = minus(a.assumptions, b.assumptions);
  d.added_assumptions = minus(b.assumptions, a.assumptions);
  d.time_delta_ms = b.time_ms - a.time_ms;
  if (a.crash && b.crash) d.crash = CrashTransition::persisted;
  else if (b.crash) d.crash = CrashTransition::appeared;
  else if (a.crash) d.crash = CrashTransition::disappeared;
  d.program_mismatch = a.program != b.program;
  return d;
}

std::string render_diff(const ReportDiff& d, const Report& a, const Report& b) {
  std::ostringstream out;
  out << "--- " << a.program << " (" << a.config << ")\n";
  out << "+++ " << b.program << " (" << b.config << ")\n";
  if (d.program_mismatch) out << "warning: comparing reports of different programs\n";
  for (const auto& k : d.removed_alarms) out << "- alarm " << k.to_string() << "\n";
  for (const auto& k : d.added_alarms) out << "+ alarm " << k.to_string() << "\n";
  for (const auto& k : d.removed_safe) out << "- safe  " << k.to_string() << "\n";
  for (const auto& k : d.added_safe) out << "+ safe  " << k.to_string() << "\n";
  for (const auto& s : d.removed_assumptions) out << "- assumption " << s << "\n";
  for (const auto& s : d.added_assumptions) out << "+ assumption " << s << "\n";
  if (d.crash == CrashTransition::appeared) out << "+ crash " << b.crash->message << "\n";
  if (d.crash == CrashTransition::disappeared) out << "- crash " << a.crash->message << "\n";
  out << "Alarms: " << a.alarm_count() << " -> " << b.alarm_count() << " (-"
      << d.removed_alarms.size() << " +" << d.added_alarms.size() << ")\n";
  out << "Safe checks: " << a.safe_count() << " -> " << b.safe_count() << " (-"
      << d.removed_safe.size() << " +" << d.added_safe.size() << ")\n";
  out << "Selectivity: " << engine::format_selectivity(a.selectivity) << " -> "
      << engine::format_selectivity(b.selectivity) << "\n";
  out << "Assumptions: -" << d.removed_assumptions.size() << " +" << d.added_assumptions.size()
      << "\n";
  out << "Time: " << std::fixed << std::setprecision(3) << a.time_ms << " ms -> " << b.time_ms
      << " ms (" << signed_ms(d.time_delta_ms) << ")\n";
  return out.str();
}

std::vector<std::string> report_files(const std::string& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string name = e.path().filename().string();
    auto ends = [&](const std::string& suf) {
      return name.size() >= suf.size() && name.compare(name.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (!ends(".json") || ends(".coverage.json") || ends(".profile.json")) continue;
    out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

BenchDiff diff_benchmarks(const std::string& dir_a, const std::string& dir_b, KeyMode mode) {
  BenchDiff d;
  auto fa = report_files(dir_a), fb = report_files(dir_b);
  std::set<std::string> sa(fa.begin(), fa.end()), sb(fb.begin(), fb.end());
  std::vector<std::string> common;
  for (const auto& f : fa) (sb.count(f) ? common : d.only_in_a).push_back(f);
  for (const auto& f : fb)
    if (!sa.count(f)) d.only_in_b.push_back(f);

  // Reports are independent; rows land in fixed slots so order does not
  // depend on scheduling.
  const long n = static_cast<long>(common.size());
  std::vector<std::optional<BenchRow>> rows(common.size());
  std::vector<std::string> errors(common.size());
  std::vector<int> crash_a(common.size()), crash_b(common.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto& name = common[static_cast<std::size_t>(i)];
    try {
      Report a = read_report((fs::path(dir_a) / name).string());
      Report b = read_report((fs::path(dir_b) / name).string());
      ReportDiff rd = diff_reports(a, b, mode);
      rows[i] = BenchRow{name, rd.removed_alarms.size(), rd.added_alarms.size(),
                         rd.time_delta_ms, rd.crash};
      crash_a[i] = a.crash ? 1 : 0;
      crash_b[i] = b.crash ? 1 : 0;
    } catch (const std::exception& e) {
      errors[i] = name + ": " + e.what();
    }
  }
  for (std::size_t i = 0; i < common.size(); ++i) {
    if (!rows[i]) {
      d.unreadable.push_back(errors[i]);
      continue;
    }
    d.total_removed += rows[i]->removed_alarms;
    d.total_added += rows[i]->added_alarms;
    d.total_time_delta_ms += rows[i]->time_delta_ms;
    d.crashes_a += static_cast<std::size_t>(crash_a[i]);
    d.crashes_b += static_cast<std::size_t>(crash_b[i]);
    d.rows.push_back(*rows[i]);
  }
  return d;
}

std::string render_bench(const BenchDiff& d) {
  std::ostringstream out;
  out << std::left << std::setw(32) << "program" << std::right << std::setw(9) << "removed"
      << std::setw(7) << "added" << std::setw(16) << "time delta" << "  crash\n";
  for (const auto& r : d.rows) {
    const char* crash = r.crash == CrashTransition::appeared      ? "new"
                        : r.crash == CrashTransition::disappeared ? "fixed"
                        : r.crash == CrashTransition::persisted   ? "both"
                                                                  : "";
    out << std::left << std::setw(32) << r.program << std::right << std::setw(9)
        << r.removed_alarms << std::setw(7) << r.added_alarms << std::setw(16)
        << signed_ms(r.time_delta_ms) << "  " << crash << "\n";
  }
  for (const auto& f : d.only_in_a) out << "only in A: " << f << "\n";
  for (const auto& f : d.only_in_b) out << "only in B: " << f << "\n";
  for (const auto& f : d.unreadable) out << "unreadable: " << f << "\n";
  out << "Total: " << d.total_removed << " alarms removed, " << d.total_added
      << " alarms added, time " << signed_ms(d.total_time_delta_ms) << "\n";
  out << "Programs only in A: " << d.only_in_a.size() << ", only in B: " << d.only_in_b.size()
      << "\n";
  out << "Crashes: A " << d.crashes_a << ", B " << d.crashes_b << "\n";
  return out.str();
}

}  // namespace absint::reports
