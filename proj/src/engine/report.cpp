#include "absint/engine/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "absint/engine/state_view.hpp"

namespace absint::engine {

const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::integer_overflow: return "IntegerOverflow";
    case CheckKind::division_by_zero: return "DivisionByZero";
    case CheckKind::modulo_by_zero: return "ModuloByZero";
    case CheckKind::assert_failure: return "AssertFailure";
  }
  return "?";
}

const char* to_string(CheckStatus s) { return s == CheckStatus::safe ? "safe" : "alarm"; }

CheckKind parse_check_kind(const std::string& s) {
  for (auto k : {CheckKind::integer_overflow, CheckKind::division_by_zero,
                 CheckKind::modulo_by_zero, CheckKind::assert_failure})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown check kind '" + s + "'");
}

CheckStatus parse_check_status(const std::string& s) {
  if (s == "safe") return CheckStatus::safe;
  if (s == "alarm") return CheckStatus::alarm;
  throw std::invalid_argument("unknown check status '" + s + "'");
}

bool check_order(const CheckRecord& a, const CheckRecord& b) {
  return std::tie(a.loc.file, a.loc.line, a.loc.col, a.kind, a.callstack) <
         std::tie(b.loc.file, b.loc.line, b.loc.col, b.kind, b.callstack);
}

std::size_t Report::safe_count() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
    return c.status == CheckStatus::safe;
  }));
}

std::size_t Report::alarm_count() const { return checks.size() - safe_count(); }

std::optional<double> compute_selectivity(const std::vector<CheckRecord>& checks) {
  if (checks.empty()) return std::nullopt;
  auto safe = std::count_if(checks.begin(), checks.end(),
                            [](const auto& c) { return c.status == CheckStatus::safe; });
  return static_cast<double>(safe) / static_cast<double>(checks.size());
}

std::string format_selectivity(const std::optional<double>& s) {
  if (!s) return "n/a";
  double pct = *s * 100.0;
  double rounded = std::round(pct * 10.0) / 10.0;
  std::string out = std::to_string(rounded);
  out.erase(out.find_last_not_of('0') + 1);
  if (out.back() == '.') out.pop_back();
  return out + "%";
}

const char* tool_version() { return "absint " ABSINT_VERSION; }

std::vector<std::string> callstack_names(const Callstack& cs) {
  std::vector<std::string> out;
  out.reserve(cs.size());
  for (const auto& f : cs) out.push_back(f.function);
  return out;
}

}  // namespace absint::engine
