#pragma once

#include <string>

#include "absint/frontend/ast.hpp"

namespace absint::frontend {

struct PrintOptions {
  // Emit `#line N "file"` markers so that re-parsing restores every
  // statement's original file and line.
  bool line_markers = false;
  int indent = 2;
};

std::string print_expr(const Expr& e);
std::string print_program(const Program& p, const PrintOptions& opts = {});

// Number of source lines, not counting line directives.
std::size_t count_lines(std::string_view text);

}  // namespace absint::frontend
