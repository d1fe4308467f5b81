#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace absint::engine {

enum class NumericKind { intervals, zones, product };
enum class ThresholdMode { static_set, collected };

const char* to_string(NumericKind k);

struct Configuration {
  std::string name = "intervals";
  NumericKind numeric = NumericKind::intervals;
  int widening_delay = 1;
  int narrowing_passes = 1;
  ThresholdMode thresholds = ThresholdMode::static_set;
  int recursion_limit = 8;
  int iteration_cap = 1000;
  // Test-only transfer-function faults; empty in every shipped configuration.
  std::string test_faulty_domain;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// `fallback_name` is used when the document has no "name" key.
Configuration parse_config(const std::string& json_text, const std::string& fallback_name);
// Throws ConfigError; the default name is the file stem.
Configuration load_config(const std::string& path);

}  // namespace absint::engine

namespace absint::engine {

// A path that exists is returned unchanged. A bare name ("zones" or
// "zones.json") is looked up in $ABSINT_CONFIG_DIR, ./configs and the
// bundled configs directory. Throws ConfigError when nothing matches.
std::string resolve_config_path(const std::string& spec);

}  // namespace absint::engine
