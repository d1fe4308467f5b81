// Command-line entry point. Exit codes: 0 success, 1 diff or gate
// failure, 2 internal analyzer error, 3 usage or input error.
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "absint/debugger/protocol.hpp"
#include "absint/debugger/repl.hpp"
#include "absint/engine/analyzer.hpp"
#include "absint/frontend/linker.hpp"
#include "absint/frontend/parser.hpp"
#include "absint/frontend/printer.hpp"
#include "absint/hooks/coverage.hpp"
#include "absint/hooks/detectors.hpp"
#include "absint/hooks/profiler.hpp"
#include "absint/hooks/registry.hpp"
#include "absint/reducer/oracle.hpp"
#include "absint/reports/ci_gate.hpp"
#include "absint/reports/diff.hpp"
#include "absint/reports/report_io.hpp"

namespace fs = std::filesystem;
using namespace absint;

namespace {

constexpr int exit_ok = 0, exit_fail = 1, exit_internal = 2, exit_usage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!fs::is_regular_file(path) || !in) throw UsageError("file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string self_path() {
  std::error_code ec;
  auto p = fs::read_symlink("/proc/self/exe", ec);
  return ec ? std::string("absint") : p.string();
}

struct Input {
  std::string file;
  std::string project, target;
};

struct Loaded {
  frontend::Program program;
  std::string id;
  std::string source;
};

Loaded load_program(const Input& in) {
  if (!in.project.empty()) {
    if (in.target.empty()) throw UsageError("--project requires --target");
    Loaded l;
    l.program = frontend::link(frontend::load_manifest(in.project), in.target);
    l.id = in.target;
    return l;
  }
  if (in.file.empty()) throw UsageError("no input program (give a .mini file or --project/--target)");
  Loaded l;
  l.source = read_file(in.file);
  l.program = frontend::parse(l.source, in.file);
  l.id = in.file;
  return l;
}

engine::Configuration load_configuration(const std::string& spec) {
  return engine::load_config(engine::resolve_config_path(spec));
}

// ---- analyze ------------------------------------------------------------

struct AnalyzeArgs {
  Input input;
  std::string config = "intervals";
  std::vector<std::string> hooks;
  std::string format = "text";
  std::string output;
  std::string trace_file;
  std::string trace_verbosity = "brief";
};

int cmd_analyze(const AnalyzeArgs& a) {
  Loaded prog = load_program(a.input);
  engine::Configuration cfg = load_configuration(a.config);

  std::ofstream trace_file;
  std::ostream* trace_out = &std::cerr;
  if (!a.trace_file.empty()) {
    trace_file.open(a.trace_file);
    if (!trace_file) throw UsageError("cannot write " + a.trace_file);
    trace_out = &trace_file;
  }
  auto verbosity =
      a.trace_verbosity == "full" ? hooks::TraceVerbosity::full : hooks::TraceVerbosity::brief;

  hooks::HookBus bus;
  std::vector<std::shared_ptr<hooks::Hook>> attached;
  for (const auto& name : a.hooks) {
    auto h = hooks::make_hook(name, *trace_out, verbosity);
    attached.push_back(h);
    bus.add(h);
  }
  std::vector<std::string> warnings;
  engine::AnalysisOptions opts;
  opts.program_id = prog.id;
  opts.hooks = &bus;
  opts.warnings = &warnings;
  engine::Report rep = engine::analyze(prog.program, cfg, opts);

  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  const std::string base = !a.output.empty()
                               ? (fs::path(a.output).parent_path() / fs::path(a.output).stem()).string()
                               : fs::path(prog.id).stem().string();
  for (const auto& h : attached) {
    if (auto* c = dynamic_cast<hooks::CoverageHook*>(h.get())) {
      auto s = c->summary();
      write_file(base + ".coverage.json", hooks::coverage_json(s));
      std::cerr << hooks::coverage_text(s);
    } else if (auto* p = dynamic_cast<hooks::ProfilerHook*>(h.get())) {
      write_file(base + ".folded", p->folded());
      write_file(base + ".profile.json", hooks::profile_json(p->profile()));
    } else if (auto* u = dynamic_cast<hooks::UnsoundnessHook*>(h.get())) {
      for (const auto& w : u->warnings()) std::cerr << w.to_string() << "\n";
    } else if (auto* i = dynamic_cast<hooks::ImprecisionHook*>(h.get())) {
      for (const auto& w : i->warnings()) std::cerr << w.to_string() << "\n";
    }
  }

  if (!a.output.empty()) reports::write_report(rep, a.output);
  if (a.format == "json") std::cout << reports::to_json(rep);
  else std::cout << reports::render_text(rep);
  if (rep.crash) {
    std::cerr << "internal error: " << rep.crash->message;
    if (rep.crash->loc) std::cerr << " at " << rep.crash->loc->to_string();
    std::cerr << "\n";
    return exit_internal;
  }
  return exit_ok;
}

// ---- diff / ci-gate -------------------------------------------------------

int cmd_diff(const std::vector<std::string>& files, const std::vector<std::string>& dirs,
             bool by_callstack) {
  auto mode = by_callstack ? reports::KeyMode::callstack : reports::KeyMode::location;
  if (!dirs.empty()) {
    for (const auto& d : dirs)
      if (!fs::is_directory(d)) throw UsageError("not a directory: " + d);
    auto bd = reports::diff_benchmarks(dirs[0], dirs[1], mode);
    std::cout << reports::render_bench(bd);
    if (!bd.unreadable.empty()) return exit_usage;
    bool differs = bd.total_removed || bd.total_added || !bd.only_in_a.empty() ||
                   !bd.only_in_b.empty() || bd.crashes_a != bd.crashes_b;
    return differs ? exit_fail : exit_ok;
  }
  if (files.size() != 2) throw UsageError("diff needs two reports, or --dirs A B");
  engine::Report a, b;
  try {
    a = reports::read_report(files[0]);
    b = reports::read_report(files[1]);
  } catch (const reports::SchemaError& e) {
    throw UsageError(e.what());
  }
  auto d = reports::diff_reports(a, b, mode);
  std::cout << reports::render_diff(d, a, b);
  return d.empty() ? exit_ok : exit_fail;
}

// ---- debug ---------------------------------------------------------------

struct DebugArgs {
  std::string file;
  std::string config = "intervals";
  std::string script;
  int serve_port = -1;
  bool serve_stdio = false;
  std::string ui_dir;
};

int cmd_debug(const DebugArgs& a) {
  if (a.serve_stdio) {
    debugger::ProtocolServer server;
    debugger::serve_stream(server, std::cin, std::cout);
    return exit_ok;
  }
  if (a.serve_port >= 0) {
    std::optional<std::string> ui;
    if (!a.ui_dir.empty()) {
      if (!fs::is_directory(a.ui_dir)) throw UsageError("not a directory: " + a.ui_dir);
      ui = a.ui_dir;
    }
    debugger::serve_tcp(a.serve_port, ui, std::cerr);
    return exit_ok;
  }
  if (a.file.empty()) throw UsageError("debug needs a program, --serve <port> or --serve-stdio");
  Loaded prog = load_program(Input{a.file, "", ""});
  engine::Configuration cfg = load_configuration(a.config);
  debugger::Session session(std::move(prog.program), std::move(cfg), prog.id, prog.source);
  std::cout << session.banner() << "\n";
  bool alive = true;
  if (!a.script.empty()) {
    std::istringstream script(read_file(a.script));
    alive = debugger::run_repl(session, script, std::cout, true);
    if (alive && ::isatty(0)) alive = debugger::run_repl(session, std::cin, std::cout, false);
  } else {
    alive = debugger::run_repl(session, std::cin, std::cout, !::isatty(0));
  }
  return exit_ok;
}

// ---- reduce --------------------------------------------------------------

struct ReduceArgs {
  std::string file;
  std::string oracle;
  std::string crash_config, pattern;
  std::vector<std::string> diff_configs;
  std::string check;
  bool any = false;
  std::string output;
  bool parallel = false;
  double timeout_s = 30;
};

int cmd_reduce(const ReduceArgs& a) {
  const std::string text = read_file(a.file);
  const int modes = !a.oracle.empty() + !a.crash_config.empty() + !a.diff_configs.empty();
  if (modes != 1) throw UsageError("choose exactly one of --oracle, --crash-config, --diff-configs");
  reducer::Scratch scratch;
  auto timeout = std::chrono::milliseconds(static_cast<long long>(a.timeout_s * 1000));
  reducer::ReduceOptions opts;
  opts.parallel = a.parallel;
  reducer::TextOracle oracle;
  if (!a.oracle.empty()) {
    oracle = reducer::make_command_oracle(a.oracle, scratch, timeout);
  } else if (!a.crash_config.empty()) {
    if (a.pattern.empty()) throw UsageError("--crash-config requires --pattern");
    try {
      std::regex check(a.pattern);
    } catch (const std::regex_error& e) {
      throw UsageError("bad --pattern: " + std::string(e.what()));
    }
    oracle = reducer::make_crash_oracle(self_path(), engine::resolve_config_path(a.crash_config),
                                        a.pattern, scratch, timeout);
  } else {
    if (a.check.empty() == !a.any) throw UsageError("--diff-configs needs exactly one of --check or --any");
    std::optional<reducer::CheckSpec> spec;
    if (!a.check.empty()) {
      try {
        spec = reducer::parse_check_spec(a.check);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      opts.preserve_lines = true;
    }
    oracle = reducer::make_differential_oracle(self_path(),
                                               engine::resolve_config_path(a.diff_configs[0]),
                                               engine::resolve_config_path(a.diff_configs[1]),
                                               spec, scratch, timeout);
  }

  reducer::ReductionResult r;
  try {
    r = reducer::reduce_source(text, a.file, oracle, opts);
  } catch (const reducer::ReductionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  if (!a.output.empty()) write_file(a.output, r.text);
  else std::cout << r.text;
  std::cerr << reducer::result_table(fs::path(a.file).filename().string(), r);
  std::cerr << "oracle calls: " << r.oracle_calls << ", parse rejects: " << r.precheck_rejects
            << ", passes: " << r.passes.size() << "\n";
  return exit_ok;
}

int cmd_link(const std::string& project, const std::string& target, const std::string& out) {
  frontend::Program p = frontend::link(frontend::load_manifest(project), target);
  frontend::PrintOptions po;
  po.line_markers = true;
  std::string text = frontend::print_program(p, po);
  if (out.empty()) std::cout << text;
  else write_file(out, text);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"absint: abstract-interpretation static analyzer for MiniImp"};
  app.set_version_flag("--version", engine::tool_version());
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "analyze a program and report checks");
  analyze->add_option("file", an.input.file, "program (.mini)");
  analyze->add_option("--project", an.input.project, "project manifest (JSON)");
  analyze->add_option("--target", an.input.target, "target inside the manifest");
  analyze->add_option("--config", an.config, "configuration file or bundled name")
      ->capture_default_str();
  analyze->add_option("--hook", an.hooks, "attach an observer hook (repeatable)")
      ->check(CLI::IsMember(hooks::hook_names()));
  analyze->add_option("--format", an.format, "stdout format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  analyze->add_option("-o,--output", an.output, "also write the JSON report here");
  analyze->add_option("--trace-file", an.trace_file, "trace hook output (default stderr)");
  analyze->add_option("--trace-verbosity", an.trace_verbosity, "trace detail")
      ->check(CLI::IsMember({"brief", "full"}))
      ->capture_default_str();

  std::vector<std::string> diff_files, diff_dirs;
  bool by_callstack = false;
  auto* diff = app.add_subcommand("diff", "compare two reports or two report directories");
  diff->add_option("reports", diff_files, "a.json b.json");
  diff->add_option("--dirs", diff_dirs, "compare report directories A B")->expected(2);
  diff->add_flag("--by-callstack", by_callstack, "key checks by location and callstack");

  std::string baseline, current;
  reports::GatePolicy policy;
  bool gate_by_callstack = false;
  auto* gate = app.add_subcommand("ci-gate", "fail on precision or soundness regressions");
  gate->add_option("--baseline", baseline, "baseline report directory")->required();
  gate->add_option("--current", current, "current report directory")->required();
  gate->add_flag("--update-baseline", policy.update_baseline,
                 "replace the baseline with current on pass (creates a missing baseline)");
  gate->add_option("--selectivity-tolerance", policy.selectivity_tolerance,
                   "allowed selectivity drop, as a fraction")
      ->capture_default_str();
  gate->add_flag("--by-callstack", gate_by_callstack, "key checks by location and callstack");

  DebugArgs dbg;
  auto* debug = app.add_subcommand("debug", "interactive abstract debugger");
  debug->add_option("file", dbg.file, "program (.mini)");
  debug->add_option("--config", dbg.config, "configuration file or bundled name")
      ->capture_default_str();
  debug->add_option("--script", dbg.script, "replay debugger commands from a file");
  debug->add_option("--serve", dbg.serve_port, "serve the wire protocol on a local TCP port");
  debug->add_flag("--serve-stdio", dbg.serve_stdio, "serve the wire protocol on stdin/stdout");
  debug->add_option("--ui", dbg.ui_dir, "static UI assets served with --serve");

  ReduceArgs rd;
  auto* reduce = app.add_subcommand("reduce", "minimize a program while an oracle holds");
  reduce->add_option("file", rd.file, "program (.mini)")->required();
  reduce->add_option("--oracle", rd.oracle, "command run as `cmd candidate.mini`; exit 0 = interesting");
  reduce->add_option("--crash-config", rd.crash_config, "configuration reproducing an internal error");
  reduce->add_option("--pattern", rd.pattern, "regex the internal error message must match");
  reduce->add_option("--diff-configs", rd.diff_configs, "configurations A and B whose verdicts differ")
      ->expected(2);
  reduce->add_option("--check", rd.check, "check key file:line:Kind whose status must differ");
  reduce->add_flag("--any", rd.any, "any check safe under A and an alarm under B");
  reduce->add_option("--output,-o", rd.output, "write the reduced program here");
  reduce->add_flag("--parallel", rd.parallel, "probe candidates of one round concurrently");
  reduce->add_option("--timeout", rd.timeout_s, "seconds per oracle run")->capture_default_str();

  std::string project, target, link_out;
  auto* link = app.add_subcommand("link", "merge a multi-file target into one source");
  link->add_option("--project", project, "project manifest (JSON)")->required();
  link->add_option("--target", target, "target name")->required();
  link->add_option("-o,--output", link_out, "merged program (default stdout)");

  if (argc > 1 && argv[1][0] != '-' && !app.get_subcommand_no_throw(argv[1])) {
    std::cerr << "error: unknown verb '" << argv[1] << "'\n" << app.help();
    return exit_usage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*analyze) return cmd_analyze(an);
    if (*diff) return cmd_diff(diff_files, diff_dirs, by_callstack);
    if (*gate) {
      policy.key_mode = gate_by_callstack ? reports::KeyMode::callstack : reports::KeyMode::location;
      auto res = reports::ci_gate(baseline, current, policy);
      std::cout << res.summary();
      return res.exit_code;
    }
    if (*debug) return cmd_debug(dbg);
    if (*reduce) return cmd_reduce(rd);
    if (*link) return cmd_link(project, target, link_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const frontend::ParseError& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  } catch (const engine::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const frontend::LinkError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_usage;
}
