#include "absint/engine/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace absint::engine {

using nlohmann::json;

const char* to_string(NumericKind k) {
  switch (k) {
    case NumericKind::intervals: return "intervals";
    case NumericKind::zones: return "zones";
    case NumericKind::product: return "product";
  }
  return "?";
}

namespace {

NumericKind parse_numeric(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "intervals") return NumericKind::intervals;
    if (s == "zones") return NumericKind::zones;
    throw ConfigError("unknown domain '" + s + "'");
  }
  if (v.is_object() && v.size() == 1 && v.contains("product")) {
    const json& parts = v["product"];
    if (!parts.is_array()) throw ConfigError("\"product\" must list its component domains");
    std::vector<std::string> names;
    for (const auto& p : parts) {
      if (!p.is_string()) throw ConfigError("product components must be domain names");
      names.push_back(p.get<std::string>());
    }
    for (const auto& n : names)
      if (n != "intervals" && n != "zones") throw ConfigError("unknown domain '" + n + "'");
    if (names == std::vector<std::string>{"intervals", "zones"} ||
        names == std::vector<std::string>{"zones", "intervals"})
      return NumericKind::product;
    throw ConfigError("unsupported product: only intervals and zones can be combined");
  }
  throw ConfigError("\"numeric\" must be a domain name or {\"product\": [...]}");
}

int nonneg_int(const json& v, const char* key) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(std::string("\"") + key + "\" must be a non-negative integer");
  return static_cast<int>(v.get<long long>());
}

}  // namespace

Configuration parse_config(const std::string& json_text, const std::string& fallback_name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed configuration JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  Configuration c;
  c.name = fallback_name;
  bool has_numeric = false;
  for (const auto& [key, v] : doc.items()) {
    if (key == "name") {
      if (!v.is_string()) throw ConfigError("\"name\" must be a string");
      c.name = v.get<std::string>();
    } else if (key == "numeric") {
      c.numeric = parse_numeric(v);
      has_numeric = true;
    } else if (key == "widening_delay") {
      c.widening_delay = nonneg_int(v, "widening_delay");
    } else if (key == "narrowing_passes") {
      c.narrowing_passes = nonneg_int(v, "narrowing_passes");
    } else if (key == "thresholds") {
      if (v == "static") c.thresholds = ThresholdMode::static_set;
      else if (v == "collected") c.thresholds = ThresholdMode::collected;
      else throw ConfigError("\"thresholds\" must be \"static\" or \"collected\"");
    } else if (key == "recursion_limit") {
      c.recursion_limit = nonneg_int(v, "recursion_limit");
      if (c.recursion_limit < 1) throw ConfigError("\"recursion_limit\" must be at least 1");
    } else if (key == "iteration_cap") {
      c.iteration_cap = nonneg_int(v, "iteration_cap");
    } else if (key == "test_faulty_domain") {
      if (v != "bottom-on-const-assign" && v != "unsound-rand")
        throw ConfigError("unknown faulty domain " + v.dump());
      c.test_faulty_domain = v.get<std::string>();
    } else {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }
  if (!has_numeric) throw ConfigError("configuration lacks \"numeric\"");
  return c;
}

Configuration load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::filesystem::path(path).stem().string());
}


std::string resolve_config_path(const std::string& spec) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(spec)) return spec;
  std::vector<std::string> searched;
  if (spec.find('/') == std::string::npos) {
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("ABSINT_CONFIG_DIR")) dirs.emplace_back(env);
    dirs.emplace_back("configs");
#ifdef ABSINT_CONFIG_DIR
    dirs.emplace_back(ABSINT_CONFIG_DIR);
#endif
    for (const auto& d : dirs) {
      for (const fs::path& cand : {d / spec, d / (spec + ".json")})
        if (fs::is_regular_file(cand)) return cand.string();
      searched.push_back(d.string());
    }
  }
  std::string msg = "configuration '" + spec + "' not found";
  if (!searched.empty()) {
    msg += " (searched";
    for (const auto& s : searched) msg += " " + s;
    msg += ")";
  }
  throw ConfigError(msg);
}

}  // namespace absint::engine
