#pragma once

#include <iosfwd>

#include "absint/debugger/session.hpp"

namespace absint::debugger {

inline constexpr const char* prompt = "absint >> ";

// Reads command lines until EOF or quit. With echo set, each line is
// printed after the prompt (script replay); otherwise the prompt alone is
// written before each read. Returns false once the session was quit.
bool run_repl(Session& session, std::istream& in, std::ostream& out, bool echo);

}  // namespace absint::debugger
