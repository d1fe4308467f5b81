#include "absint/debugger/command.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "absint/frontend/ast.hpp"

namespace absint::debugger {

namespace {

struct Spec {
  const char* name;
  const char* abbrev;
  DebugCommand::Kind kind;
  const char* usage;
};

constexpr Spec specs[] = {
    {"break", "b", DebugCommand::Kind::break_, "break <line|file:line|function|@kind|#alarm>"},
    {"continue", "c", DebugCommand::Kind::continue_, "continue"},
    {"next", "n", DebugCommand::Kind::next, "next"},
    {"step", "s", DebugCommand::Kind::step, "step"},
    {"finish", "f", DebugCommand::Kind::finish, "finish"},
    {"print", "p", DebugCommand::Kind::print, "print [var]"},
    {"backtrace", "bt", DebugCommand::Kind::backtrace, "backtrace"},
    {"where", "w", DebugCommand::Kind::where, "where"},
    {"quit", "q", DebugCommand::Kind::quit, "quit"},
    {"help", "h", DebugCommand::Kind::help, "help"},
};

std::string valid_list() {
  std::string out;
  for (const auto& s : specs) {
    if (!out.empty()) out += ", ";
    out += std::string(s.name) + " (" + s.abbrev + ")";
  }
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

bool is_ident(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

const char* const stmt_kinds[] = {"decl", "assign", "if", "while", "assert", "call", "return", "print"};

}  // namespace

std::string to_string(const Breakpoint& bp) {
  struct V {
    std::string operator()(const LocationBp& b) const {
      return (b.file.empty() ? "line " : b.file + ":") + std::to_string(b.line);
    }
    std::string operator()(const FunctionBp& b) const { return "function " + b.name; }
    std::string operator()(const KindBp& b) const { return "@" + b.kind; }
    std::string operator()(const AlarmBp&) const { return "#alarm"; }
  };
  return std::visit(V{}, bp);
}

Breakpoint parse_breakpoint(const std::string& arg) {
  if (arg == "#a" || arg == "#alarm") return AlarmBp{};
  if (!arg.empty() && arg[0] == '@') {
    std::string k = arg.substr(1);
    for (const char* s : stmt_kinds)
      if (k == s) return KindBp{k};
    std::string list;
    for (const char* s : stmt_kinds) list += (list.empty() ? "" : ", ") + std::string(s);
    throw CommandError("unknown statement kind '" + k + "'; valid kinds: " + list);
  }
  if (all_digits(arg)) return LocationBp{"", std::stoi(arg)};
  if (auto colon = arg.rfind(':'); colon != std::string::npos && colon > 0 &&
                                   all_digits(arg.substr(colon + 1)))
    return LocationBp{arg.substr(0, colon), std::stoi(arg.substr(colon + 1))};
  if (is_ident(arg)) return FunctionBp{arg};
  throw CommandError("bad breakpoint '" + arg + "'; expected line, file:line, function, @kind or #alarm");
}

std::vector<DebugCommand> parse_command(const std::string& text) {
  std::vector<DebugCommand> out;
  std::stringstream chain(text);
  std::string segment;
  while (std::getline(chain, segment, ';')) {
    std::istringstream words(segment);
    std::string head;
    if (!(words >> head)) continue;
    std::vector<std::string> args;
    for (std::string w; words >> w;) args.push_back(w);

    const Spec* spec = nullptr;
    for (const auto& s : specs)
      if (head == s.name || head == s.abbrev) spec = &s;
    if (!spec) throw CommandError("unknown command '" + head + "'; valid commands: " + valid_list());

    DebugCommand cmd;
    cmd.kind = spec->kind;
    const std::size_t max_args = cmd.kind == DebugCommand::Kind::break_  ? 1
                                 : cmd.kind == DebugCommand::Kind::print ? 1
                                                                         : 0;
    if (args.size() > max_args || (cmd.kind == DebugCommand::Kind::break_ && args.empty()))
      throw CommandError(std::string("usage: ") + spec->usage);
    if (cmd.kind == DebugCommand::Kind::break_) cmd.bp = parse_breakpoint(args[0]);
    if (cmd.kind == DebugCommand::Kind::print && !args.empty()) cmd.var = args[0];
    out.push_back(std::move(cmd));
  }
  return out;
}

std::string command_help() {
  std::string out = "commands (chain with ';'):\n";
  for (const auto& s : specs) out += std::string("  ") + s.usage + "  [" + s.abbrev + "]\n";
  return out;
}

}  // namespace absint::debugger
