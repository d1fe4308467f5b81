#include "absint/debugger/protocol.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "absint/frontend/parser.hpp"
#include "absint/reports/report_io.hpp"
#include "json.hpp"

namespace absint::debugger {

using json = nlohmann::ordered_json;

namespace {

json loc_json(const frontend::SourceLoc& l) {
  return {{"file", l.file}, {"line", l.line}, {"col", l.col}};
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

}  // namespace

LaunchedProgram launch_from_files(const std::string& program, const std::string& config) {
  std::ifstream in(program);
  if (!in) throw std::runtime_error("cannot open '" + program + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  frontend::Program p = frontend::parse(ss.str(), program);
  engine::Configuration c = engine::load_config(engine::resolve_config_path(config));
  LaunchedProgram out;
  out.source = ss.str();
  out.session = std::make_unique<Session>(std::move(p), std::move(c), program, ss.str());
  return out;
}

ProtocolServer::ProtocolServer(SessionFactory factory) : factory_(std::move(factory)) {}

std::string ProtocolServer::stopped_or_terminated() {
  const Session& s = *session_;
  json ev{{"seq", ++seq_}, {"type", "event"}};
  if (s.finished()) {
    terminated_sent_ = true;
    ev["event"] = "terminated";
    json body{{"description", s.banner()}};
    body["report"] = json::parse(reports::to_json(s.report()));
    ev["body"] = std::move(body);
    return dump(ev);
  }
  const StopState& st = s.stop();
  json body{{"reason", to_string(st.reason)}, {"description", s.banner()}};
  body["location"] = st.loc ? loc_json(*st.loc) : json(nullptr);
  body["function"] = st.callstack.empty() ? "" : st.callstack.back().function;
  body["callstack"] = engine::callstack_names(st.callstack);
  body["iteration"] = st.iterations.empty() ? json(nullptr) : json(st.iterations.back());
  if (!st.breakpoint.empty()) body["breakpoint"] = st.breakpoint;
  if (st.alarm)
    body["alarm"] = {{"kind", engine::to_string(st.alarm->kind)},
                     {"location", loc_json(st.alarm->loc)},
                     {"detail", st.alarm->detail}};
  if (!st.expr.empty()) body["expression"] = st.expr;
  ev["event"] = "stopped";
  ev["body"] = std::move(body);
  return dump(ev);
}

std::vector<std::string> ProtocolServer::handle(const std::string& line) {
  std::vector<std::string> out;
  json req;
  long long request_seq = 0;
  std::string command;
  auto respond = [&](bool ok, json body, const std::string& message = {}) {
    json r{{"seq", ++seq_},        {"type", "response"}, {"request_seq", request_seq},
           {"success", ok},        {"command", command}};
    if (!message.empty()) r["message"] = message;
    r["body"] = body.is_null() ? json::object() : std::move(body);
    out.push_back(dump(r));
  };

  try {
    req = json::parse(line);
  } catch (const json::parse_error& e) {
    respond(false, nullptr, std::string("malformed message: ") + e.what());
    return out;
  }
  if (!req.is_object() || !req.contains("type") || req["type"] != "request" ||
      !req.contains("command") || !req["command"].is_string() || !req.contains("seq") ||
      !req["seq"].is_number_integer()) {
    if (req.is_object() && req.contains("seq") && req["seq"].is_number_integer())
      request_seq = req["seq"].get<long long>();
    respond(false, nullptr,
            "malformed message: expected {\"seq\":n,\"type\":\"request\",\"command\":C}");
    return out;
  }
  request_seq = req["seq"].get<long long>();
  command = req["command"].get<std::string>();
  const json args = req.contains("arguments") && req["arguments"].is_object() ? req["arguments"]
                                                                               : json::object();
  auto str_arg = [&](const char* k) -> std::optional<std::string> {
    if (!args.contains(k)) return std::nullopt;
    if (!args[k].is_string()) throw std::invalid_argument(std::string("argument '") + k + "' must be a string");
    return args[k].get<std::string>();
  };

  try {
    if (command == "initialize") {
      respond(true, {{"protocol", protocol_version},
                     {"capabilities",
                      {{"supportsAlarmBreakpoint", true},
                       {"supportsFunctionBreakpoints", true},
                       {"supportsKindBreakpoints", true},
                       {"supportsStepOut", true}}}});
      return out;
    }
    if (command == "disconnect") {
      if (session_) session_->quit();
      session_.reset();
      closed_ = true;
      respond(true, nullptr);
      return out;
    }
    if (command == "launch") {
      if (session_) {
        respond(false, nullptr, "a session is already running; one session per connection");
        return out;
      }
      auto program = str_arg("program");
      if (!program) {
        respond(false, nullptr, "launch requires 'program'");
        return out;
      }
      auto config = str_arg("config").value_or("intervals");
      LaunchedProgram lp = factory_(*program, config);
      session_ = std::move(lp.session);
      respond(true, {{"program", *program}, {"config", config}, {"source", lp.source}});
      out.push_back(stopped_or_terminated());
      return out;
    }
    if (!session_) {
      respond(false, nullptr, "no session; send launch first");
      return out;
    }
    Session& s = *session_;

    if (command == "setBreakpoints") {
      s.clear_breakpoints();
      const std::string file = str_arg("file").value_or("");
      json lines = json::array(), fns = json::array(), kinds = json::array();
      if (args.contains("lines"))
        for (const auto& l : args["lines"]) {
          int n = l.get<int>();
          s.add_breakpoint(LocationBp{file, n});
          lines.push_back({{"line", n}, {"verified", s.has_statement_at(file, n)}});
        }
      if (args.contains("functions"))
        for (const auto& f : args["functions"]) {
          std::string name = f.get<std::string>();
          bool ok = !s.add_breakpoint(FunctionBp{name}).has_value();
          fns.push_back({{"name", name}, {"verified", ok}});
        }
      if (args.contains("kinds"))
        for (const auto& k : args["kinds"]) {
          std::string name = k.get<std::string>();
          s.add_breakpoint(parse_breakpoint("@" + name));
          kinds.push_back({{"kind", name}, {"verified", true}});
        }
      bool alarm = args.value("alarm", false);
      if (alarm) s.add_breakpoint(AlarmBp{});
      respond(true, {{"lines", lines}, {"functions", fns}, {"kinds", kinds}, {"alarm", alarm}});
      return out;
    }
    if (command == "continue" || command == "next" || command == "stepIn" ||
        command == "stepOut") {
      if (s.finished()) {
        respond(true, {{"message", "analysis complete"}});
        return out;
      }
      RunMode m = command == "continue" ? RunMode::continue_
                  : command == "next"   ? RunMode::next
                  : command == "stepIn" ? RunMode::step
                                        : RunMode::finish;
      respond(true, nullptr);
      s.resume(m);
      out.push_back(stopped_or_terminated());
      return out;
    }
    if (command == "stackTrace") {
      json frames = json::array();
      if (!s.finished()) {
        const auto& cs = s.stop().callstack;
        for (std::size_t i = cs.size(); i-- > 0;) {
          frontend::SourceLoc where = i + 1 == cs.size()
                                          ? s.stop().loc.value_or(cs[i].call_site)
                                          : cs[i + 1].call_site;
          frames.push_back({{"id", cs.size() - 1 - i},
                            {"function", cs[i].function},
                            {"location", loc_json(where)}});
        }
      }
      respond(true, {{"frames", frames}, {"lines", s.backtrace()}});
      return out;
    }
    if (command == "variables") {
      auto name = str_arg("name");
      try {
        if (name) {
          respond(true, {{"name", *name}, {"lines", s.print(*name)}});
        } else {
          json vars = json::array();
          for (const auto& v : s.scope()) vars.push_back({{"name", v}, {"lines", s.print(v)}});
          respond(true, {{"lines", s.print("")}, {"variables", vars}});
        }
      } catch (const SessionError& e) {
        respond(false, {{"scope", s.finished() ? std::vector<std::string>{} : s.scope()}},
                e.what());
      }
      return out;
    }
    respond(false, nullptr, "unknown command '" + command + "'");
  } catch (const std::exception& e) {
    respond(false, nullptr, e.what());
  }
  return out;
}

void serve_stream(ProtocolServer& server, std::istream& in, std::ostream& out) {
  std::string line;
  while (!server.closed() && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (const auto& m : server.handle(line)) out << m << "\n";
    out.flush();
  }
}

}  // namespace absint::debugger
