#include "absint/reducer/oracle.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <regex>
#include <stdexcept>

#include "absint/reports/report_io.hpp"

namespace absint::reducer {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

ProcessResult run_process(const std::vector<std::string>& argv,
                          std::chrono::milliseconds timeout) {
  ProcessResult res;
  int out_pipe[2], err_pipe[2];
  if (::pipe(out_pipe) != 0) throw std::runtime_error("pipe failed");
  if (::pipe(err_pipe) != 0) {
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    throw std::runtime_error("pipe failed");
  }
  std::vector<char*> cargv;
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(out_pipe[1], 1);
    ::dup2(err_pipe[1], 2);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[0]);
    ::close(err_pipe[1]);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, 0);
    ::execvp(cargv[0], cargv.data());
    _exit(127);
  }
  ::setpgid(pid, pid);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);

  const auto deadline = Clock::now() + timeout;
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  std::string* sinks[2] = {&res.out, &res.err};
  int open_fds = 2;
  while (open_fds > 0) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) {
      res.timed_out = true;
      break;
    }
    int r = ::poll(fds, 2, static_cast<int>(left.count()));
    if (r < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      char buf[4096];
      ssize_t n = ::read(fds[i].fd, buf, sizeof buf);
      if (n > 0) {
        sinks[i]->append(buf, static_cast<std::size_t>(n));
      } else {
        ::close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  for (auto& f : fds)
    if (f.fd >= 0) ::close(f.fd);
  if (res.timed_out) ::kill(-pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!res.timed_out && WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

Scratch::Scratch() {
  std::string templ = (fs::temp_directory_path() / "absint-reduce-XXXXXX").string();
  if (!::mkdtemp(templ.data())) throw std::runtime_error("cannot create scratch directory");
  dir_ = templ;
}

Scratch::~Scratch() {
  std::error_code ec;
  fs::remove_all(dir_, ec);
}

std::string Scratch::write(const std::string& text) {
  std::string path = (fs::path(dir_) / ("candidate-" + std::to_string(counter_++) + ".mini")).string();
  std::ofstream out(path);
  out << text;
  return path;
}

TextOracle make_command_oracle(const std::string& cmd, Scratch& scratch,
                               std::chrono::milliseconds timeout) {
  return [cmd, &scratch, timeout](const std::string& text) {
    std::string path = scratch.write(text);
    ProcessResult r = run_process({"/bin/sh", "-c", cmd + " \"$1\"", "sh", path}, timeout);
    fs::remove(path);
    if (r.exit_code == 126 || r.exit_code == 127)
      throw ReductionError("oracle command not executable: " + cmd);
    return !r.timed_out && r.exit_code == 0;
  };
}

TextOracle make_crash_oracle(const std::string& analyzer, const std::string& config,
                             const std::string& pattern, Scratch& scratch,
                             std::chrono::milliseconds timeout) {
  std::regex re(pattern);
  return [=, &scratch](const std::string& text) {
    std::string path = scratch.write(text);
    ProcessResult r =
        run_process({analyzer, "analyze", path, "--config", config, "--format", "json"}, timeout);
    fs::remove(path);
    return !r.timed_out && r.exit_code == 2 && std::regex_search(r.err, re);
  };
}

CheckSpec parse_check_spec(const std::string& text) {
  auto k = text.rfind(':');
  if (k == std::string::npos || k == 0) throw std::invalid_argument("expected file:line:kind");
  auto l = text.rfind(':', k - 1);
  if (l == std::string::npos) throw std::invalid_argument("expected file:line:kind");
  CheckSpec c;
  c.file = text.substr(0, l);
  try {
    c.line = std::stoi(text.substr(l + 1, k - l - 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad line in check '" + text + "'");
  }
  c.kind = engine::parse_check_kind(text.substr(k + 1));
  return c;
}

bool reports_disagree(const engine::Report& a, const engine::Report& b,
                      const std::optional<CheckSpec>& check) {
  if (a.crash || b.crash) return false;
  using engine::CheckStatus;
  if (check) {
    auto status = [&](const engine::Report& r) -> std::optional<CheckStatus> {
      std::optional<CheckStatus> s;
      for (const auto& c : r.checks) {
        if (c.kind != check->kind || c.loc.line != check->line) continue;
        if (fs::path(c.loc.file).filename() != fs::path(check->file).filename()) continue;
        if (!s || c.status == CheckStatus::alarm) s = c.status;
      }
      return s;
    };
    auto sa = status(a), sb = status(b);
    return sa && sb && *sa != *sb;
  }
  for (const auto& ca : a.checks) {
    if (ca.status != CheckStatus::safe) continue;
    for (const auto& cb : b.checks)
      if (cb.status == CheckStatus::alarm && cb.kind == ca.kind && cb.loc == ca.loc) return true;
  }
  return false;
}

TextOracle make_differential_oracle(const std::string& analyzer, const std::string& config_a,
                                    const std::string& config_b,
                                    const std::optional<CheckSpec>& check, Scratch& scratch,
                                    std::chrono::milliseconds timeout) {
  return [=, &scratch](const std::string& text) {
    std::string path = scratch.write(text);
    auto run = [&](const std::string& cfg) -> std::optional<engine::Report> {
      ProcessResult r =
          run_process({analyzer, "analyze", path, "--config", cfg, "--format", "json"}, timeout);
      if (r.timed_out || r.exit_code != 0) return std::nullopt;
      try {
        return reports::from_json(r.out);
      } catch (const std::exception&) {
        return std::nullopt;
      }
    };
    auto a = run(config_a);
    std::optional<engine::Report> b;
    if (a) b = run(config_b);
    fs::remove(path);
    return a && b && reports_disagree(*a, *b, check);
  };
}

}  // namespace absint::reducer
