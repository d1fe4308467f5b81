#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "absint/frontend/ast.hpp"

namespace absint::frontend {

struct Token {
  enum class Kind { ident, number, keyword, punct, line_directive, end };
  Kind kind = Kind::end;
  std::string text;
  SourceLoc loc;
};

// `#line N "file"` directives are returned as line_directive tokens and
// otherwise consumed by the lexer itself (they reset the reported location).
std::vector<Token> tokenize(std::string_view source, const std::string& file);

// Parses and resolves a single translation unit. Calls must resolve to a
// function of the unit or a builtin.
Program parse(std::string_view source, const std::string& file);

// Parses one file of a multi-file target: locals are resolved but calls are
// left for link() to check.
Program parse_unit(std::string_view source, const std::string& file);

// Resolves variable slots, numbers statements and, when check_calls is set,
// verifies every call target and arity. Throws ParseError.
void resolve(Program& program, bool check_calls);

Program parse_file(const std::string& path);

}  // namespace absint::frontend
