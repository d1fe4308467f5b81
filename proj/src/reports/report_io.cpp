#include "absint/reports/report_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace absint::reports {

using engine::CheckRecord;
using Json = nlohmann::ordered_json;

namespace {

Json loc_json(const frontend::SourceLoc& l) {
  Json j;
  j["file"] = l.file;
  j["line"] = l.line;
  j["col"] = l.col;
  return j;
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError("report schema error: missing key '" + std::string(key) + "'" + where);
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key, const std::string& where = "") {
  const Json& v = require(j, key, where);
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    throw SchemaError("report schema error: key '" + std::string(key) + "' has the wrong type" +
                      where);
  }
}

frontend::SourceLoc loc_from(const Json& j, const std::string& where) {
  return {get<std::string>(j, "file", where), get<int>(j, "line", where),
          get<int>(j, "col", where)};
}

const char* const schema_keys[] = {"schema_version", "tool_version", "program",  "config",
                                   "time_ms",        "checks",       "assumptions", "selectivity",
                                   "coverage",       "crash",        "hook_failures"};

// Records which top-level keys of a (possibly truncated) document carry a
// complete value, so a truncation can be reported as the key it lost.
class KeyScan : public nlohmann::json_sax<nlohmann::json> {
 public:
  std::set<std::string> complete;

  bool null() override { return scalar(); }
  bool boolean(bool) override { return scalar(); }
  bool number_integer(number_integer_t) override { return scalar(); }
  bool number_unsigned(number_unsigned_t) override { return scalar(); }
  bool number_float(number_float_t, const string_t&) override { return scalar(); }
  bool string(string_t&) override { return scalar(); }
  bool binary(binary_t&) override { return scalar(); }
  bool start_object(std::size_t) override { return ++depth_, true; }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return ++depth_, true; }
  bool end_array() override { return close(); }
  bool key(string_t& k) override {
    if (depth_ == 1) pending_ = k;
    return true;
  }
  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception&) override {
    return false;
  }

 private:
  bool scalar() {
    if (depth_ == 1) complete.insert(pending_);
    return true;
  }
  bool close() {
    --depth_;
    return scalar();
  }
  int depth_ = 0;
  std::string pending_;
};

}  // namespace

std::string to_json(const Report& r) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["tool_version"] = r.tool_version;
  j["program"] = r.program;
  j["config"] = r.config;
  j["time_ms"] = r.time_ms;
  j["checks"] = Json::array();
  for (const CheckRecord& c : r.checks) {
    Json cj;
    cj["kind"] = engine::to_string(c.kind);
    cj["file"] = c.loc.file;
    cj["line"] = c.loc.line;
    cj["col"] = c.loc.col;
    cj["status"] = engine::to_string(c.status);
    cj["callstack"] = c.callstack;
    cj["detail"] = c.detail;
    j["checks"].push_back(cj);
  }
  j["assumptions"] = r.assumptions;
  j["selectivity"] = r.selectivity ? Json(*r.selectivity) : Json(nullptr);
  j["coverage"] = nullptr;
  if (r.crash) {
    Json cj;
    cj["message"] = r.crash->message;
    cj["loc"] = r.crash->loc ? loc_json(*r.crash->loc) : Json(nullptr);
    j["crash"] = cj;
  } else {
    j["crash"] = nullptr;
  }
  j["hook_failures"] = r.hook_failures;
  return j.dump(2) + "\n";
}

Report from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    KeyScan scan;
    nlohmann::json::sax_parse(text, &scan);
    if (!scan.complete.empty()) {
      for (const char* k : schema_keys)
        if (!scan.complete.count(k))
          throw SchemaError("report schema error: truncated document, missing key '" +
                            std::string(k) + "'");
    }
    throw SchemaError(std::string("report schema error: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("report schema error: top level must be an object");
  Report r;
  r.schema_version = get<int>(j, "schema_version");
  if (r.schema_version != engine::report_schema_version)
    throw SchemaError("unsupported report schema_version " + std::to_string(r.schema_version) +
                      " (expected " + std::to_string(engine::report_schema_version) + ")");
  r.tool_version = get<std::string>(j, "tool_version");
  r.program = get<std::string>(j, "program");
  r.config = get<std::string>(j, "config");
  r.time_ms = get<double>(j, "time_ms");
  const Json& checks = require(j, "checks", "");
  if (!checks.is_array()) throw SchemaError("report schema error: 'checks' must be an array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Json& c = checks[i];
    const std::string where = " in checks[" + std::to_string(i) + "]";
    CheckRecord rec;
    try {
      rec.kind = engine::parse_check_kind(get<std::string>(c, "kind", where));
      rec.status = engine::parse_check_status(get<std::string>(c, "status", where));
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("report schema error: ") + e.what() + where);
    }
    rec.loc = loc_from(c, where);
    rec.callstack = get<std::vector<std::string>>(c, "callstack", where);
    rec.detail = get<std::string>(c, "detail", where);
    r.checks.push_back(std::move(rec));
  }
  r.assumptions = get<std::vector<std::string>>(j, "assumptions");
  const Json& sel = require(j, "selectivity", "");
  if (!sel.is_null()) {
    if (!sel.is_number()) throw SchemaError("report schema error: 'selectivity' must be a number");
    r.selectivity = sel.get<double>();
  }
  require(j, "coverage", "");
  const Json& crash = require(j, "crash", "");
  if (!crash.is_null()) {
    engine::CrashInfo ci;
    ci.message = get<std::string>(crash, "message", " in crash");
    const Json& loc = require(crash, "loc", " in crash");
    if (!loc.is_null()) ci.loc = loc_from(loc, " in crash.loc");
    r.crash = ci;
  }
  r.hook_failures = get<std::vector<std::string>>(j, "hook_failures");
  return r;
}

void write_report(const Report& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report '" + path + "'");
  out << to_json(r);
}

Report read_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read report '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "Analysis of " << r.program << " with configuration " << r.config << "\n";
  for (const CheckRecord& c : r.checks) {
    std::string stack;
    for (const auto& f : c.callstack) stack += (stack.empty() ? "" : ";") + f;
    out << "  " << c.loc.to_string() << ": " << engine::to_string(c.status) << ": "
        << engine::to_string(c.kind) << " (in " << stack << "): " << c.detail << "\n";
  }
  out << "Checks: " << r.checks.size() << " total, " << r.safe_count() << " safe, "
      << r.alarm_count() << " alarm\n";
  out << "Selectivity: " << engine::format_selectivity(r.selectivity) << "\n";
  if (r.assumptions.empty()) {
    out << "Assumptions: none\n";
  } else {
    out << "Assumptions:\n";
    for (const auto& a : r.assumptions) out << "  " << a << "\n";
  }
  for (const auto& h : r.hook_failures) out << "Hook failure: " << h << "\n";
  if (r.crash) {
    out << "Crash: " << r.crash->message;
    if (r.crash->loc) out << " at " << r.crash->loc->to_string();
    out << "\n";
  }
  out << "Time: " << r.time_ms << " ms\n";
  return out.str();
}

}  // namespace absint::reports
