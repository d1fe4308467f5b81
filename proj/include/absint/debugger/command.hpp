#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace absint::debugger {

struct LocationBp {
  std::string file;  // empty: any file
  int line = 0;
};
struct FunctionBp {
  std::string name;
};
// Matches statements by constructor name ("while", "assign", ...).
struct KindBp {
  std::string kind;
};
struct AlarmBp {};

using Breakpoint = std::variant<LocationBp, FunctionBp, KindBp, AlarmBp>;

std::string to_string(const Breakpoint& bp);

struct DebugCommand {
  enum class Kind { break_, continue_, next, step, finish, print, backtrace, where, quit, help };
  Kind kind = Kind::continue_;
  Breakpoint bp;    // break_
  std::string var;  // print; empty renders the whole state
};

class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "b #a;c;p y" -> [Break(alarm), Continue, Print(y)]. Empty segments are
// skipped. Throws CommandError naming the valid commands.
std::vector<DebugCommand> parse_command(const std::string& text);

Breakpoint parse_breakpoint(const std::string& arg);

std::string command_help();

}  // namespace absint::debugger
