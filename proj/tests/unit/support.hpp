#pragma once

#include <string>

#include "absint/engine/analyzer.hpp"
#include "absint/frontend/ast.hpp"

namespace absint::testing {

std::string fixture(const std::string& name);
std::string config_path(const std::string& name);
std::string read_text(const std::string& path);

engine::Configuration config(const std::string& name);
frontend::Program parse_text(const std::string& text, const std::string& file = "t.mini");
engine::Report analyze_text(const std::string& text, const std::string& config_name,
                            const std::string& file = "t.mini");

// Report JSON with time_ms zeroed, for byte comparisons.
std::string timeless_json(engine::Report r);

}  // namespace absint::testing
