#pragma once

#include <stdexcept>
#include <string>

#include "absint/engine/report.hpp"

namespace absint::reports {

using engine::Report;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Keys in schema order; "coverage" is always null (coverage lives in the
// sidecar file).
std::string to_json(const Report& r);
Report from_json(const std::string& text);

void write_report(const Report& r, const std::string& path);
// Throws SchemaError (including unreadable files).
Report read_report(const std::string& path);

// Human-readable summary.
std::string render_text(const Report& r);

}  // namespace absint::reports
