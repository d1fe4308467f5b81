#include "support.hpp"

#include <fstream>
#include <sstream>

#include "absint/frontend/parser.hpp"
#include "absint/reports/report_io.hpp"

namespace absint::testing {

std::string fixture(const std::string& name) { return std::string(ABSINT_FIXTURES) + "/" + name; }

std::string config_path(const std::string& name) {
  return std::string(ABSINT_CONFIGS) + "/" + name + ".json";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

engine::Configuration config(const std::string& name) {
  return engine::load_config(config_path(name));
}

frontend::Program parse_text(const std::string& text, const std::string& file) {
  return frontend::parse(text, file);
}

engine::Report analyze_text(const std::string& text, const std::string& config_name,
                            const std::string& file) {
  engine::AnalysisOptions opts;
  opts.program_id = file;
  return engine::analyze(parse_text(text, file), config(config_name), opts);
}

std::string timeless_json(engine::Report r) {
  r.time_ms = 0;
  return reports::to_json(r);
}

}  // namespace absint::testing
