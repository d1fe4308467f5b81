#pragma once

#include <optional>
#include <string>
#include <vector>

#include "absint/frontend/ast.hpp"

namespace absint::engine {

using frontend::SourceLoc;

enum class CheckKind { integer_overflow, division_by_zero, modulo_by_zero, assert_failure };
enum class CheckStatus { safe, alarm };

const char* to_string(CheckKind k);
const char* to_string(CheckStatus s);
// Throws std::invalid_argument on unknown names.
CheckKind parse_check_kind(const std::string& s);
CheckStatus parse_check_status(const std::string& s);

struct CheckRecord {
  CheckKind kind = CheckKind::integer_overflow;
  SourceLoc loc;
  CheckStatus status = CheckStatus::safe;
  std::vector<std::string> callstack;  // entry first
  std::string detail;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

// Report order: (file, line, col, kind), then callstack.
bool check_order(const CheckRecord& a, const CheckRecord& b);

struct CrashInfo {
  std::string message;
  std::optional<SourceLoc> loc;

  friend bool operator==(const CrashInfo&, const CrashInfo&) = default;
};

inline constexpr int report_schema_version = 1;

struct Report {
  int schema_version = report_schema_version;
  std::string tool_version;
  std::string program;
  std::string config;
  double time_ms = 0;
  std::vector<CheckRecord> checks;
  std::vector<std::string> assumptions;
  std::optional<double> selectivity;
  std::optional<CrashInfo> crash;
  std::vector<std::string> hook_failures;

  std::size_t safe_count() const;
  std::size_t alarm_count() const;

  friend bool operator==(const Report&, const Report&) = default;
};

// safe / total, absent when there are no checks.
std::optional<double> compute_selectivity(const std::vector<CheckRecord>& checks);
// "50%" or "n/a".
std::string format_selectivity(const std::optional<double>& s);

const char* tool_version();

}  // namespace absint::engine
