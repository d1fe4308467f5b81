// TCP transport for the debugger protocol: raw JSON lines, or the same
// messages carried in websocket text frames for browser clients.
#include <arpa/inet.h>
#include <netinet/in.h>
#include <openssl/evp.h>
#include <openssl/sha.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "absint/debugger/protocol.hpp"

namespace absint::debugger {

namespace {

class Conn {
 public:
  explicit Conn(int fd) : fd_(fd) {}
  ~Conn() { ::close(fd_); }
  Conn(const Conn&) = delete;
  Conn& operator=(const Conn&) = delete;

  // Reads up to and including delim; false on EOF before delim.
  bool read_until(const std::string& delim, std::string& out) {
    for (;;) {
      if (auto pos = buf_.find(delim); pos != std::string::npos) {
        out = buf_.substr(0, pos + delim.size());
        buf_.erase(0, pos + delim.size());
        return true;
      }
      if (!fill()) return false;
    }
  }
  bool read_exact(std::size_t n, std::string& out) {
    while (buf_.size() < n)
      if (!fill()) return false;
    out = buf_.substr(0, n);
    buf_.erase(0, n);
    return true;
  }
  bool peek(std::size_t n, std::string& out) {
    while (buf_.size() < n)
      if (!fill()) return false;
    out = buf_.substr(0, n);
    return true;
  }
  bool write(const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      ssize_t w = ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
      if (w <= 0) return false;
      off += static_cast<std::size_t>(w);
    }
    return true;
  }

 private:
  bool fill() {
    char tmp[4096];
    ssize_t r = ::recv(fd_, tmp, sizeof tmp, 0);
    if (r <= 0) return false;
    buf_.append(tmp, static_cast<std::size_t>(r));
    return true;
  }
  int fd_;
  std::string buf_;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct HttpRequest {
  std::string method, path;
  std::map<std::string, std::string> headers;  // lower-cased names
};

HttpRequest parse_http(const std::string& head) {
  HttpRequest r;
  std::istringstream in(head);
  std::string line;
  std::getline(in, line);
  std::istringstream first(line);
  first >> r.method >> r.path;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string v = line.substr(colon + 1);
    v.erase(0, v.find_first_not_of(' '));
    r.headers[lower(line.substr(0, colon))] = v;
  }
  return r;
}

const char* content_type(const std::filesystem::path& p) {
  static const std::map<std::string, const char*> types = {
      {".html", "text/html; charset=utf-8"}, {".js", "text/javascript; charset=utf-8"},
      {".css", "text/css; charset=utf-8"},   {".json", "application/json"},
      {".svg", "image/svg+xml"},             {".png", "image/png"},
      {".map", "application/json"},          {".ico", "image/x-icon"}};
  auto it = types.find(p.extension().string());
  return it == types.end() ? "application/octet-stream" : it->second;
}

void serve_static(Conn& c, const HttpRequest& req, const std::optional<std::string>& ui_dir) {
  namespace fs = std::filesystem;
  auto reply = [&](const std::string& status, const char* type, const std::string& body) {
    c.write("HTTP/1.1 " + status + "\r\nContent-Type: " + type +
            "\r\nContent-Length: " + std::to_string(body.size()) +
            "\r\nConnection: close\r\n\r\n" + body);
  };
  if (!ui_dir || req.method != "GET") {
    reply("404 Not Found", "text/plain", "not found\n");
    return;
  }
  std::string path = req.path.substr(0, req.path.find('?'));
  if (path.empty() || path == "/") path = "/index.html";
  if (path.find("..") != std::string::npos) {
    reply("403 Forbidden", "text/plain", "forbidden\n");
    return;
  }
  fs::path file = fs::path(*ui_dir) / path.substr(1);
  std::ifstream in(file, std::ios::binary);
  if (!fs::is_regular_file(file) || !in) {
    reply("404 Not Found", "text/plain", "not found\n");
    return;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  reply("200 OK", content_type(file), ss.str());
}

// Reads one complete websocket message; false on close or transport loss.
bool ws_read(Conn& c, std::string& message) {
  message.clear();
  for (;;) {
    std::string h;
    if (!c.read_exact(2, h)) return false;
    const auto b0 = static_cast<unsigned char>(h[0]), b1 = static_cast<unsigned char>(h[1]);
    const bool fin = b0 & 0x80;
    const int opcode = b0 & 0x0f;
    const bool masked = b1 & 0x80;
    std::uint64_t len = b1 & 0x7f;
    std::string ext;
    if (len == 126) {
      if (!c.read_exact(2, ext)) return false;
      len = (static_cast<unsigned char>(ext[0]) << 8) | static_cast<unsigned char>(ext[1]);
    } else if (len == 127) {
      if (!c.read_exact(8, ext)) return false;
      len = 0;
      for (char ch : ext) len = (len << 8) | static_cast<unsigned char>(ch);
    }
    std::string mask, payload;
    if (masked && !c.read_exact(4, mask)) return false;
    if (!c.read_exact(static_cast<std::size_t>(len), payload)) return false;
    if (masked)
      for (std::size_t i = 0; i < payload.size(); ++i) payload[i] ^= mask[i % 4];
    if (opcode == 8) {
      c.write(websocket_frame("", 8));
      return false;
    }
    if (opcode == 9) {
      c.write(websocket_frame(payload, 10));
      continue;
    }
    if (opcode == 10) continue;
    message += payload;
    if (fin) return true;
  }
}

void serve_protocol_lines(Conn& c, ProtocolServer& server) {
  std::string line;
  while (!server.closed() && c.read_until("\n", line)) {
    line.pop_back();
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (const auto& m : server.handle(line))
      if (!c.write(m + "\n")) return;
  }
}

void serve_protocol_ws(Conn& c, ProtocolServer& server) {
  std::string msg;
  while (!server.closed() && ws_read(c, msg)) {
    std::istringstream in(msg);
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      for (const auto& m : server.handle(line))
        if (!c.write(websocket_frame(m))) return;
    }
  }
  if (server.closed()) c.write(websocket_frame("", 8));
}

}  // namespace

std::string websocket_accept_key(const std::string& client_key) {
  const std::string src = client_key + "258EAFA5-E914-47DA-95CA-C5AB0DC85B11";
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(src.data()), src.size(), digest);
  unsigned char b64[4 * ((SHA_DIGEST_LENGTH + 2) / 3) + 1];
  int n = EVP_EncodeBlock(b64, digest, SHA_DIGEST_LENGTH);
  return std::string(reinterpret_cast<char*>(b64), static_cast<std::size_t>(n));
}

std::string websocket_frame(const std::string& payload, int opcode) {
  std::string f;
  f.push_back(static_cast<char>(0x80 | (opcode & 0x0f)));
  const std::uint64_t n = payload.size();
  if (n < 126) {
    f.push_back(static_cast<char>(n));
  } else if (n <= 0xffff) {
    f.push_back(126);
    f.push_back(static_cast<char>(n >> 8));
    f.push_back(static_cast<char>(n & 0xff));
  } else {
    f.push_back(127);
    for (int i = 7; i >= 0; --i) f.push_back(static_cast<char>((n >> (8 * i)) & 0xff));
  }
  return f + payload;
}

void serve_tcp(int port, const std::optional<std::string>& ui_dir, std::ostream& log,
               SessionFactory factory) {
  int lfd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (lfd < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(lfd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::bind(lfd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(lfd, 8) < 0) {
    std::string err = std::strerror(errno);
    ::close(lfd);
    throw std::runtime_error("cannot listen on 127.0.0.1:" + std::to_string(port) + ": " + err);
  }
  socklen_t alen = sizeof addr;
  ::getsockname(lfd, reinterpret_cast<sockaddr*>(&addr), &alen);
  log << "listening on 127.0.0.1:" << ntohs(addr.sin_port) << std::endl;

  // Static requests are answered and closed; the first protocol client
  // owns the one session, and its departure ends the server.
  for (;;) {
    int fd = ::accept(lfd, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    Conn c(fd);
    std::string first;
    if (!c.peek(1, first)) continue;
    if (first[0] == '{' || first[0] == ' ' || first[0] == '\n') {
      ProtocolServer server(factory);
      serve_protocol_lines(c, server);
      break;
    }
    std::string head;
    if (!c.read_until("\r\n\r\n", head)) continue;
    HttpRequest req = parse_http(head);
    if (lower(req.headers["upgrade"]) == "websocket" && req.headers.count("sec-websocket-key")) {
      c.write("HTTP/1.1 101 Switching Protocols\r\nUpgrade: websocket\r\nConnection: Upgrade\r\n"
              "Sec-WebSocket-Accept: " +
              websocket_accept_key(req.headers["sec-websocket-key"]) + "\r\n\r\n");
      ProtocolServer server(factory);
      serve_protocol_ws(c, server);
      break;
    }
    serve_static(c, req, ui_dir);
  }
  ::close(lfd);
}

}  // namespace absint::debugger
