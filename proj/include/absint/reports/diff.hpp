#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "absint/engine/report.hpp"

namespace absint::reports {

using engine::CheckKind;
using engine::Report;

struct CheckKey {
  std::string file;
  int line = 0;
  int col = 0;
  CheckKind kind = CheckKind::integer_overflow;
  std::vector<std::string> callstack;  // empty unless keyed by callstack

  std::string to_string() const;
  friend bool operator==(const CheckKey&, const CheckKey&) = default;
  friend auto operator<=>(const CheckKey&, const CheckKey&) = default;
};

enum class KeyMode { location, callstack };

enum class CrashTransition { none, appeared, disappeared, persisted };

struct ReportDiff {
  std::vector<CheckKey> removed_alarms, added_alarms;
  std::vector<CheckKey> removed_safe, added_safe;
  std::vector<std::string> removed_assumptions, added_assumptions;
  double time_delta_ms = 0;
  CrashTransition crash = CrashTransition::none;
  bool program_mismatch = false;

  // True when nothing but timing differs.
  bool empty() const;
};

// A key is an alarm when any record with that key is one, safe otherwise.
ReportDiff diff_reports(const Report& a, const Report& b, KeyMode mode = KeyMode::location);

std::string render_diff(const ReportDiff& d, const Report& a, const Report& b);

struct BenchRow {
  std::string program;  // report file name
  std::size_t removed_alarms = 0;
  std::size_t added_alarms = 0;
  double time_delta_ms = 0;
  CrashTransition crash = CrashTransition::none;
};

struct BenchDiff {
  std::vector<BenchRow> rows;  // sorted by program
  std::vector<std::string> only_in_a, only_in_b;
  std::vector<std::string> unreadable;  // "dir/file: reason"
  std::size_t total_removed = 0, total_added = 0;
  double total_time_delta_ms = 0;
  std::size_t crashes_a = 0, crashes_b = 0;
};

// Report files of a directory: *.json except hook sidecars.
std::vector<std::string> report_files(const std::string& dir);

BenchDiff diff_benchmarks(const std::string& dir_a, const std::string& dir_b,
                          KeyMode mode = KeyMode::location);
std::string render_bench(const BenchDiff& d);

}  // namespace absint::reports
