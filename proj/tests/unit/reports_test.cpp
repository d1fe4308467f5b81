// Report serialization, diffing and the CI gate.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "absint/frontend/parser.hpp"
#include "absint/reports/ci_gate.hpp"
#include "absint/reports/diff.hpp"
#include "absint/reports/report_io.hpp"
#include "program_gen.hpp"
#include "support.hpp"

namespace absint::testing {
namespace {

namespace fs = std::filesystem;
using namespace reports;

engine::Report toy(const char* config_name) {
  engine::AnalysisOptions opts;
  opts.program_id = "toy.mini";
  return engine::analyze(frontend::parse_file(fixture("toy.mini")), config(config_name), opts);
}

TEST(ReportJson, RoundTrips) {
  std::vector<engine::Report> reports{toy("intervals"), toy("zones")};
  for (std::uint32_t seed = 1; seed < 30; ++seed)
    reports.push_back(analyze_text(random_program(seed, 15), "product"));
  auto crashed = engine::analyze(frontend::parse_file(fixture("diverge.mini")),
                                 engine::load_config(fixture("diverge.json")));
  crashed.hook_failures.push_back("hook 'x' disabled: y");
  crashed.assumptions.push_back("recursion truncated somewhere");
  reports.push_back(crashed);
  for (const auto& r : reports) {
    const std::string text = to_json(r);
    EXPECT_EQ(from_json(text), r);
    EXPECT_EQ(to_json(from_json(text)), text);
  }
  EXPECT_NE(to_json(reports[0]).find("\"coverage\": null"), std::string::npos);
}

TEST(ReportJson, SchemaErrors) {
  const std::string good = to_json(toy("intervals"));
  auto mutate = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_THROW(from_json(good.substr(0, good.size() / 2)), SchemaError);
  EXPECT_THROW(from_json("[]"), SchemaError);
  EXPECT_THROW(from_json(mutate("\"schema_version\": 1", "\"schema_version\": 7")), SchemaError);
  EXPECT_THROW(from_json(mutate("\"status\": \"alarm\"", "\"status\": \"maybe\"")), SchemaError);
  EXPECT_THROW(from_json(mutate("\"line\": 4", "\"line\": \"4\"")), SchemaError);
  EXPECT_THROW(from_json(mutate("\"kind\": \"IntegerOverflow\"", "\"kind\": \"Nope\"")), SchemaError);
  EXPECT_THROW(read_report("/nonexistent/r.json"), SchemaError);
  try {
    from_json(R"({"schema_version": 1, "tool_version": "absint", "program": "p"})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("missing key"), std::string::npos) << e.what();
  }
}

TEST(Diff, ToyPair) {
  const auto a = toy("intervals"), b = toy("zones");
  const auto d = diff_reports(a, b);
  ASSERT_EQ(d.removed_alarms.size(), 1u);
  ASSERT_EQ(d.added_safe.size(), 1u);
  EXPECT_TRUE(d.added_alarms.empty());
  EXPECT_TRUE(d.removed_safe.empty());
  EXPECT_EQ(d.removed_alarms[0].line, 4);
  EXPECT_FALSE(d.empty());
  const std::string text = render_diff(d, a, b);
  EXPECT_NE(text.find("- alarm"), std::string::npos);
  EXPECT_NE(text.find("+ safe"), std::string::npos);
  EXPECT_TRUE(diff_reports(a, a).empty());
}

TEST(Diff, Antisymmetric) {
  for (std::uint32_t seed = 1; seed < 40; ++seed) {
    const std::string text = random_program(seed, 15);
    const auto a = analyze_text(text, "intervals");
    const auto b = analyze_text(text, "zones");
    const auto ab = diff_reports(a, b), ba = diff_reports(b, a);
    EXPECT_EQ(ab.removed_alarms, ba.added_alarms);
    EXPECT_EQ(ab.added_alarms, ba.removed_alarms);
    EXPECT_EQ(ab.removed_safe, ba.added_safe);
    EXPECT_EQ(ab.added_safe, ba.removed_safe);
    EXPECT_EQ(ab.empty(), ba.empty());
    // Zones never lose a safe check on straight-line code relative to intervals.
    EXPECT_TRUE(ab.added_alarms.empty()) << text;
  }
}

struct Dirs {
  fs::path root = fs::temp_directory_path() / ("absint_gate_" + std::to_string(::getpid()));
  fs::path base = root / "base", cur = root / "cur";
  Dirs() {
    fs::remove_all(root);
    fs::create_directories(base);
    fs::create_directories(cur);
  }
  ~Dirs() { fs::remove_all(root); }
};

TEST(CiGate, PassesOnImprovementAndFailsOnRegression) {
  Dirs d;
  write_report(toy("intervals"), (d.base / "toy.json").string());
  write_report(toy("zones"), (d.cur / "toy.json").string());
  std::ofstream(d.cur / "toy.coverage.json") << "{}";  // sidecars are ignored
  auto pass = ci_gate(d.base.string(), d.cur.string());
  EXPECT_EQ(pass.exit_code, 0);
  EXPECT_FALSE(pass.improvements.empty());
  EXPECT_NE(pass.summary().find("PASS"), std::string::npos);

  auto fail = ci_gate(d.cur.string(), d.base.string());
  EXPECT_EQ(fail.exit_code, 1);
  EXPECT_NE(fail.summary().find("FAIL"), std::string::npos);
  EXPECT_FALSE(fail.failures.empty());
}

TEST(CiGate, MissingBaselineAndUnreadableCurrent) {
  Dirs d;
  write_report(toy("zones"), (d.cur / "toy.json").string());
  EXPECT_EQ(ci_gate((d.root / "nothing").string(), d.cur.string()).exit_code, 3);
  EXPECT_EQ(ci_gate(d.base.string(), d.cur.string()).exit_code, 3);  // empty baseline

  GatePolicy update;
  update.update_baseline = true;
  EXPECT_EQ(ci_gate(d.base.string(), d.cur.string(), update).exit_code, 0);
  EXPECT_TRUE(fs::exists(d.base / "toy.json"));
  EXPECT_EQ(ci_gate(d.base.string(), d.cur.string()).exit_code, 0);

  std::ofstream(d.cur / "broken.json") << "{\"schema_version\": 1,";
  EXPECT_EQ(ci_gate(d.base.string(), d.cur.string()).exit_code, 2);
  EXPECT_EQ(ci_gate(d.base.string(), (d.root / "gone").string()).exit_code, 2);
}

TEST(CiGate, SelectivityToleranceAndVanishedProgram) {
  Dirs d;
  auto base = toy("zones");
  write_report(base, (d.base / "toy.json").string());
  write_report(base, (d.base / "other.json").string());
  write_report(base, (d.cur / "toy.json").string());
  auto r = ci_gate(d.base.string(), d.cur.string());
  EXPECT_EQ(r.exit_code, 1);  // other.json disappeared

  write_report(base, (d.cur / "other.json").string());
  auto worse = base;
  worse.assumptions.push_back("new assumption");
  write_report(worse, (d.cur / "toy.json").string());
  EXPECT_EQ(ci_gate(d.base.string(), d.cur.string()).exit_code, 1);
}

TEST(BenchDiff, SummarizesDirectories) {
  Dirs d;
  write_report(toy("intervals"), (d.base / "toy.json").string());
  write_report(toy("intervals"), (d.base / "only_a.json").string());
  write_report(toy("zones"), (d.cur / "toy.json").string());
  auto b = diff_benchmarks(d.base.string(), d.cur.string());
  ASSERT_EQ(b.rows.size(), 1u);
  EXPECT_EQ(b.total_removed, 1u);
  EXPECT_EQ(b.total_added, 0u);
  ASSERT_EQ(b.only_in_a.size(), 1u);
  EXPECT_NE(render_bench(b).find("Total"), std::string::npos);
}

}  // namespace
}  // namespace absint::testing
