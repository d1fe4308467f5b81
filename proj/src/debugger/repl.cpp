#include "absint/debugger/repl.hpp"

#include <istream>
#include <ostream>

namespace absint::debugger {

bool run_repl(Session& session, std::istream& in, std::ostream& out, bool echo) {
  for (;;) {
    out << prompt << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      if (!echo) out << "\n";
      return true;
    }
    if (echo) out << line << "\n";
    std::vector<DebugCommand> cmds;
    try {
      cmds = parse_command(line);
    } catch (const CommandError& e) {
      out << e.what() << "\n";
      continue;
    }
    for (const auto& c : cmds) {
      std::string text;
      bool alive = session.execute(c, text);
      if (!text.empty()) out << text << "\n";
      if (!alive) return false;
    }
  }
}

}  // namespace absint::debugger
