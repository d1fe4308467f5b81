#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absint/debugger/session.hpp"

namespace absint::debugger {

inline constexpr const char* protocol_version = "absintdbg/1";

struct LaunchedProgram {
  std::unique_ptr<Session> session;
  std::string source;  // sent back to the client for display
};

// Builds a session from launch arguments (program path, config name or
// path). Throws std::exception with a user-facing message.
using SessionFactory =
    std::function<LaunchedProgram(const std::string& program, const std::string& config)>;

LaunchedProgram launch_from_files(const std::string& program, const std::string& config);

// Newline-delimited JSON request/response/event protocol. One client, one
// session; requests are handled strictly in arrival order.
class ProtocolServer {
 public:
  explicit ProtocolServer(SessionFactory factory = launch_from_files);

  // Handles one message; returns the outgoing messages in order.
  std::vector<std::string> handle(const std::string& line);
  bool closed() const { return closed_; }
  Session* session() { return session_.get(); }

 private:
  struct Out;
  std::string stopped_or_terminated();

  SessionFactory factory_;
  std::unique_ptr<Session> session_;
  int seq_ = 0;
  bool closed_ = false;
  bool terminated_sent_ = false;
};

// Serves one client over a pair of streams until disconnect or EOF.
void serve_stream(ProtocolServer& server, std::istream& in, std::ostream& out);

// Listens on 127.0.0.1:port (0 picks a free port) and serves the first
// protocol client, raw JSON lines or a websocket upgrade. Plain HTTP GETs
// are answered from ui_dir when set. The bound port is written to log.
void serve_tcp(int port, const std::optional<std::string>& ui_dir, std::ostream& log,
               SessionFactory factory = launch_from_files);

// Websocket helpers, exposed for tests.
std::string websocket_accept_key(const std::string& client_key);
std::string websocket_frame(const std::string& payload, int opcode = 1);

}  // namespace absint::debugger
