// End-to-end runs of the command-line tool: exit codes and file outputs.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "absint/reducer/oracle.hpp"
#include "absint/reports/report_io.hpp"
#include "support.hpp"

namespace absint::testing {
namespace {

namespace fs = std::filesystem;
using reducer::ProcessResult;

ProcessResult cli(std::vector<std::string> args, int timeout_s = 60) {
  args.insert(args.begin(), ABSINT_BINARY);
  return reducer::run_process(args, std::chrono::seconds(timeout_s));
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("absint_cli_" + std::to_string(::getpid()));
  TempDir() {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& s) const { return (path / s).string(); }
};

TEST(Cli, UsageErrorsExitThree) {
  EXPECT_EQ(cli({}).exit_code, 3);
  auto verb = cli({"fly"});
  EXPECT_EQ(verb.exit_code, 3);
  EXPECT_NE(verb.err.find("unknown verb 'fly'"), std::string::npos);
  EXPECT_EQ(cli({"analyze", "/nonexistent.mini"}).exit_code, 3);
  EXPECT_EQ(cli({"analyze", fixture("toy.mini"), "--config", "nope"}).exit_code, 3);
  EXPECT_EQ(cli({"analyze", fixture("toy.mini"), "--hook", "nope"}).exit_code, 3);
  EXPECT_EQ(cli({"reduce", fixture("toy.mini")}).exit_code, 3);
}

TEST(Cli, HelpListsEveryFlag) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> verbs{
      {"analyze", {"--config", "--hook", "--format", "--output", "--project", "--target"}},
      {"diff", {"--dirs", "--by-callstack"}},
      {"ci-gate", {"--baseline", "--current", "--update-baseline"}},
      {"debug", {"--config", "--script", "--serve", "--serve-stdio", "--ui"}},
      {"reduce", {"--oracle", "--crash-config", "--pattern", "--diff-configs", "--check", "--any"}},
      {"link", {"--project", "--target"}},
  };
  for (const auto& [verb, flags] : verbs) {
    auto r = cli({verb, "--help"});
    EXPECT_EQ(r.exit_code, 0) << verb;
    for (const auto& f : flags) EXPECT_NE(r.out.find(f), std::string::npos) << verb << " " << f;
  }
}

TEST(Cli, AnalyzeTextAndJson) {
  auto text = cli({"analyze", fixture("toy.mini"), "--config", "intervals"});
  EXPECT_EQ(text.exit_code, 0);
  EXPECT_NE(text.out.find("Selectivity: 50%"), std::string::npos) << text.out;
  TempDir d;
  auto json = cli({"analyze", fixture("toy.mini"), "--config", "zones", "--format", "json", "-o",
                   d / "toy.json", "--hook", "coverage", "--hook", "profile"});
  ASSERT_EQ(json.exit_code, 0) << json.err;
  auto r = reports::read_report(d / "toy.json");
  EXPECT_EQ(*r.selectivity, 1.0);
  EXPECT_TRUE(fs::exists(d / "toy.coverage.json"));
  EXPECT_TRUE(fs::exists(d / "toy.folded"));
  EXPECT_TRUE(fs::exists(d / "toy.profile.json"));
}

TEST(Cli, InternalErrorExitsTwo) {
  auto r = cli({"analyze", fixture("diverge.mini"), "--config", fixture("diverge.json")});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("internal error"), std::string::npos);
}

TEST(Cli, DiffAndGate) {
  TempDir d;
  fs::create_directories(d / "a");
  fs::create_directories(d / "b");
  ASSERT_EQ(cli({"analyze", fixture("toy.mini"), "--config", "intervals", "--format", "json", "-o",
                 d / "a/toy.json"}).exit_code, 0);
  ASSERT_EQ(cli({"analyze", fixture("toy.mini"), "--config", "zones", "--format", "json", "-o",
                 d / "b/toy.json"}).exit_code, 0);
  auto diff = cli({"diff", d / "a/toy.json", d / "b/toy.json"});
  EXPECT_EQ(diff.exit_code, 1);
  EXPECT_NE(diff.out.find("- alarm"), std::string::npos) << diff.out;
  EXPECT_EQ(cli({"diff", d / "a/toy.json", d / "a/toy.json"}).exit_code, 0);
  EXPECT_EQ(cli({"diff", d / "a/toy.json", d / "missing.json"}).exit_code, 3);
  EXPECT_EQ(cli({"diff", "--dirs", d / "a", d / "b"}).exit_code, 1);
  EXPECT_EQ(cli({"diff", "--dirs", d / "a", d / "a"}).exit_code, 0);

  auto pass = cli({"ci-gate", "--baseline", d / "a", "--current", d / "b"});
  EXPECT_EQ(pass.exit_code, 0) << pass.out << pass.err;
  EXPECT_NE(pass.out.find("improvement"), std::string::npos);
  auto fail = cli({"ci-gate", "--baseline", d / "b", "--current", d / "a"});
  EXPECT_EQ(fail.exit_code, 1);
  EXPECT_EQ(cli({"ci-gate", "--baseline", d / "none", "--current", d / "a"}).exit_code, 3);
}

TEST(Cli, DebugScript) {
  TempDir d;
  std::ofstream(d / "cmds.txt") << "b #a;c;p y\n";
  auto r = cli({"debug", fixture("toy.mini"), "--config", "intervals", "--script", d / "cmds.txt"});
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("stopped (alarm)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("y ∈ [-1, 2147483647]"), std::string::npos) << r.out;
}

TEST(Cli, ReduceWritesOutput) {
  TempDir d;
  auto r = cli({"reduce", fixture("planted_crash.mini"), "--crash-config", "intervals", "--pattern",
                "planted crash", "-o", d / "min.mini"},
               300);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(fs::exists(d / "min.mini"));
  EXPECT_NE(r.err.find("reduction"), std::string::npos);
}

}  // namespace
}  // namespace absint::testing
