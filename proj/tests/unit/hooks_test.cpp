// Hooks observe without perturbing results; detectors and the profiler
// agree with independent measurements.
#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "absint/frontend/parser.hpp"
#include "absint/hooks/coverage.hpp"
#include "absint/hooks/detectors.hpp"
#include "absint/hooks/profiler.hpp"
#include "absint/hooks/registry.hpp"
#include "absint/hooks/thresholds.hpp"
#include "program_gen.hpp"
#include "support.hpp"

namespace absint::testing {
namespace {

using engine::Configuration;
using domains::Bound;

engine::Report run(const frontend::Program& p, const Configuration& c, hooks::HookBus* bus,
                   std::vector<std::string>* warnings = nullptr) {
  engine::AnalysisOptions opts;
  opts.program_id = "p.mini";
  opts.hooks = bus;
  opts.warnings = warnings;
  return engine::analyze(p, c, opts);
}

std::vector<std::string> purity_corpus() {
  std::vector<std::string> out;
  for (const char* f : {"toy.mini", "unsound.mini", "div0.mini", "coverage.mini"})
    out.push_back(read_text(fixture(f)));
  out.push_back(R"(int fact(int n) {
  if (n <= 1) return 1;
  int r = fact(n - 1);
  return n * r;
}
int main(int a) {
  int r = fact(a);
  int i = 0;
  while (i < 100) { i = i + 3; if (i == 50) print(i); }
  assert(i >= 100);
  return r;
}
)");
  for (std::uint32_t seed = 1; seed <= 25; ++seed) out.push_back(random_program(seed, 15));
  return out;
}

Configuration collected(Configuration c) {
  c.thresholds = engine::ThresholdMode::collected;
  c.name += "-collected";
  return c;
}

TEST(HookPurity, ReportsByteIdenticalWithEachHook) {
  std::ostringstream sink;
  std::vector<Configuration> configs;
  for (const char* n : {"intervals", "zones", "product"}) {
    configs.push_back(config(n));
    configs.push_back(collected(config(n)));
  }
  std::size_t compared = 0;
  for (const auto& text : purity_corpus()) {
    const auto program = parse_text(text, "p.mini");
    for (const auto& c : configs) {
      const std::string plain = timeless_json(run(program, c, nullptr));
      for (const auto& name : hooks::hook_names()) {
        if (name == "thresholds" && c.thresholds == engine::ThresholdMode::collected) continue;
        hooks::HookBus bus;
        bus.add(hooks::make_hook(name, sink, hooks::TraceVerbosity::full));
        ASSERT_EQ(plain, timeless_json(run(program, c, &bus))) << name << " / " << c.name << "\n"
                                                               << text;
        ++compared;
      }
      hooks::HookBus all;
      for (const auto& name : hooks::hook_names())
        if (name != "thresholds" || c.thresholds != engine::ThresholdMode::collected)
          all.add(hooks::make_hook(name, sink));
      ASSERT_EQ(plain, timeless_json(run(program, c, &all)));
    }
  }
  EXPECT_GT(compared, 900u);
}

TEST(HookPurity, ThresholdsHookOnlyActsUnderCollected) {
  std::ostringstream sink;
  const auto program = parse_text(R"(int main() {
  int i = 0;
  int j = 0;
  while (j < 10) {
    j++;
    if (i < 37) i = i + 2;
  }
  assert(i <= 38);
}
)");
  const auto plain = run(program, config("intervals"), nullptr);
  EXPECT_EQ(plain.alarm_count(), 1u);

  hooks::HookBus idle;
  idle.add(hooks::make_hook("thresholds", sink));
  EXPECT_EQ(timeless_json(run(program, config("intervals"), &idle)), timeless_json(plain));

  hooks::HookBus active;
  active.add(hooks::make_hook("thresholds", sink));
  EXPECT_EQ(run(program, collected(config("intervals")), &active).alarm_count(), 0u);

  std::vector<std::string> warnings;
  const auto fallback = run(program, collected(config("intervals")), nullptr, &warnings);
  EXPECT_EQ(fallback.alarm_count(), 1u);
  ASSERT_EQ(warnings.size(), 1u);
  EXPECT_NE(warnings[0].find("no thresholds hook"), std::string::npos);
}

// ---- detectors -------------------------------------------------------------

std::vector<hooks::Warning> unsoundness(const std::string& file, const Configuration& c) {
  auto h = std::make_shared<hooks::UnsoundnessHook>();
  hooks::HookBus bus;
  bus.add(h);
  const auto program = frontend::parse_file(fixture(file));
  run(program, c, &bus);
  return h->warnings();
}

TEST(UnsoundnessDetector, FaultyDomainTriggersExactlyOneWarning) {
  const auto faulty = engine::load_config(fixture("faulty_const.json"));
  auto w = unsoundness("unsound.mini", faulty);
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].loc.line, 4);
  EXPECT_TRUE(unsoundness("unsound.mini", config("intervals")).empty());
  for (const char* n : {"intervals", "zones", "product"}) {
    EXPECT_TRUE(unsoundness("div0.mini", config(n)).empty()) << n;
    EXPECT_TRUE(unsoundness("toy.mini", config(n)).empty()) << n;
  }
}

TEST(UnsoundnessDetector, SilentOnRandomPrograms) {
  for (std::uint32_t seed = 100; seed < 160; ++seed) {
    const auto program = parse_text(random_program(seed, 15));
    for (const char* n : {"intervals", "zones", "product"}) {
      auto h = std::make_shared<hooks::UnsoundnessHook>();
      hooks::HookBus bus;
      bus.add(h);
      run(program, config(n), &bus);
      EXPECT_TRUE(h->warnings().empty()) << seed << " " << n << ": " << h->warnings()[0].to_string();
    }
  }
}

TEST(ImprecisionDetector, FlagsFullRangeButNotEntryReads) {
  auto h = std::make_shared<hooks::ImprecisionHook>();
  hooks::HookBus bus;
  bus.add(h);
  run(parse_text("int main(int a) {\n  int b = a;\n  int c = a + 0;\n  int d = c + 1;\n}"),
      config("intervals"), &bus);
  ASSERT_FALSE(h->warnings().empty());
  EXPECT_EQ(h->warnings()[0].loc.line, 3);
  for (const auto& w : h->warnings()) EXPECT_NE(w.loc.line, 2) << w.to_string();

  auto quiet = std::make_shared<hooks::ImprecisionHook>();
  hooks::HookBus bus2;
  bus2.add(quiet);
  run(parse_text("int main() { int a = rand(0, 10); int b = a * a; }"), config("intervals"), &bus2);
  EXPECT_TRUE(quiet->warnings().empty());
}

// ---- coverage --------------------------------------------------------------

TEST(Coverage, CountsReachedStatements) {
  auto h = std::make_shared<hooks::CoverageHook>();
  hooks::HookBus bus;
  bus.add(h);
  const auto program = frontend::parse_file(fixture("coverage.mini"));
  run(program, config("intervals"), &bus);
  const auto s = h->summary();
  std::size_t reached = 0, total = 0;
  for (const auto& f : s.functions) {
    reached += f.reached;
    total += f.total;
  }
  EXPECT_EQ(reached, 4u);
  EXPECT_EQ(total, 5u);
  EXPECT_NEAR(s.overall, 0.8, 1e-9);
  EXPECT_NE(hooks::coverage_text(s).find("80"), std::string::npos);
}

TEST(Coverage, UnreachableFunctionNeverAnalyzed) {
  auto h = std::make_shared<hooks::CoverageHook>();
  hooks::HookBus bus;
  bus.add(h);
  const auto program = parse_text("int dead() { return 1; }\nint main() { int x = 0; }");
  run(program, config("intervals"), &bus);
  const auto s = h->summary();
  ASSERT_EQ(s.functions.size(), 2u);
  EXPECT_TRUE(s.functions[0].never_analyzed);
  EXPECT_FALSE(s.functions[0].reachable);
  EXPECT_EQ(s.functions[1].reached, s.functions[1].total);
}

// ---- profiler --------------------------------------------------------------

TEST(Profiler, FoldedCountsMatchWallClock) {
  auto h = std::make_shared<hooks::ProfilerHook>();
  hooks::HookBus bus;
  bus.add(h);
  const auto program = frontend::parse_file(fixture("heavy.mini"));
  const auto report = run(program, config("zones"), &bus);
  ASSERT_GE(report.time_ms, 100.0);
  const std::string folded = h->folded();
  EXPECT_TRUE(hooks::valid_folded(folded)) << folded;
  std::istringstream in(folded);
  std::string line;
  double sum_us = 0;
  while (std::getline(in, line)) sum_us += std::stod(line.substr(line.rfind(' ') + 1));
  EXPECT_NEAR(sum_us / 1000.0, report.time_ms, report.time_ms * 0.10);
  EXPECT_FALSE(h->profile().loops.empty());
}

TEST(Profiler, FoldedGrammar) {
  EXPECT_TRUE(hooks::valid_folded("main 10\nmain;f 3\n"));
  EXPECT_FALSE(hooks::valid_folded("main;;f 3\n"));
  EXPECT_FALSE(hooks::valid_folded("main 1.5\n"));
  EXPECT_FALSE(hooks::valid_folded("main\n"));
}

// ---- bus -------------------------------------------------------------------

struct ThrowingHook : hooks::Hook {
  int calls = 0;
  std::string name() const override { return "boom"; }
  void on_stmt_before(const hooks::StmtBefore&) override {
    ++calls;
    throw std::runtime_error("exploded");
  }
};

TEST(HookBus, FailingHookIsDisabledAndRecorded) {
  auto bad = std::make_shared<ThrowingHook>();
  auto cov = std::make_shared<hooks::CoverageHook>();
  hooks::HookBus bus;
  bus.add(bad);
  bus.add(cov);
  const auto program = frontend::parse_file(fixture("toy.mini"));
  auto r = run(program, config("intervals"), &bus);
  EXPECT_EQ(bad->calls, 1);
  ASSERT_EQ(r.hook_failures.size(), 1u);
  EXPECT_NE(r.hook_failures[0].find("exploded"), std::string::npos);
  EXPECT_EQ(cov->summary().overall, 1.0);
  r.hook_failures.clear();
  EXPECT_EQ(timeless_json(r), timeless_json(run(program, config("intervals"), nullptr)));
}

}  // namespace
}  // namespace absint::testing
