// ddmin against brute force, program reduction and the subprocess oracles.
#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>

#include "absint/frontend/parser.hpp"
#include "absint/reducer/ddmin.hpp"
#include "absint/reducer/oracle.hpp"
#include "absint/reducer/reduce.hpp"
#include "absint/reports/report_io.hpp"
#include "support.hpp"

namespace absint::testing {
namespace {

using namespace reducer;

Subset all(std::size_t n) {
  Subset s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

bool contains_all(const Subset& s, const Subset& needed) {
  return std::includes(s.begin(), s.end(), needed.begin(), needed.end());
}

TEST(Ddmin, FindsTwoElementKernel) {
  const Subset kernel{1, 8};
  auto r = ddmin(10, [&](const Subset& s) { return contains_all(s, kernel); });
  EXPECT_EQ(r.units, kernel);
  EXPECT_TRUE(r.reducible);
  EXPECT_GT(r.oracle_calls, 0u);
}

TEST(Ddmin, EdgeCases) {
  EXPECT_TRUE(ddmin(6, [](const Subset&) { return true; }).units.empty());
  auto full_only = ddmin(6, [](const Subset& s) { return s.size() == 6; });
  EXPECT_FALSE(full_only.reducible);
  EXPECT_EQ(full_only.units, all(6));
  EXPECT_THROW(ddmin(4, [](const Subset&) { return false; }), ReductionError);
}

// Smallest interesting subset by exhaustive search; for a monotone oracle it
// is unique and equals the kernel.
Subset brute_force_minimum(std::size_t n, const SubsetOracle& oracle) {
  Subset best = all(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Subset s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    if (s.size() < best.size() && oracle(s)) best = s;
  }
  return best;
}

TEST(Ddmin, ExactKernelForMonotoneOraclesMatchesBruteForce) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 16;
    Subset kernel;
    for (std::size_t i = 0; i < n; ++i)
      if (rng() % 4 == 0) kernel.push_back(i);
    SubsetOracle oracle = [&](const Subset& s) { return contains_all(s, kernel); };
    const Subset expected = brute_force_minimum(n, oracle);
    ASSERT_EQ(expected, kernel);
    for (bool parallel : {false, true}) {
      DdminOptions o;
      o.parallel = parallel;
      EXPECT_EQ(ddmin(n, oracle, o).units, kernel) << "n=" << n << " parallel=" << parallel;
    }
  }
}

TEST(Ddmin, OneMinimalForArbitraryOracles) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 14;
    const std::uint32_t salt = rng();
    // Deterministic pseudo-random verdicts; the full set is interesting.
    SubsetOracle oracle = [n, salt](const Subset& s) {
      if (s.size() == n) return true;
      std::uint64_t h = salt;
      for (auto i : s) h = (h ^ (i + 1)) * 0x9E3779B97F4A7C15ull;
      return (h >> 29) % 3 == 0;
    };
    Subset serial = ddmin(n, oracle).units;
    DdminOptions par;
    par.parallel = true;
    EXPECT_EQ(ddmin(n, oracle, par).units, serial);
    ASSERT_TRUE(oracle(serial));
    for (std::size_t k = 0; k < serial.size(); ++k) {
      Subset smaller = serial;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(k));
      EXPECT_FALSE(oracle(smaller)) << "not 1-minimal";
    }
  }
}

bool planted_crash(const std::string& text) {
  try {
    auto p = frontend::parse(text, "c.mini");
    auto r = engine::analyze(p, config("intervals"));
    return r.crash && r.crash->message.find("planted crash") != std::string::npos;
  } catch (const std::exception&) {
    return false;
  }
}

TEST(ReduceSource, PlantedCrashInProcess) {
  const std::string text = read_text(fixture("planted_crash.mini"));
  std::atomic<int> unparsable{0};
  TextOracle oracle = [&](const std::string& candidate) {
    try {
      frontend::parse(candidate, "c.mini");
    } catch (const frontend::ParseError&) {
      ++unparsable;
    }
    return planted_crash(candidate);
  };
  auto r = reduce_source(text, "planted_crash.mini", oracle);
  EXPECT_EQ(unparsable.load(), 0) << "oracle saw a candidate that does not parse";
  EXPECT_EQ(r.original_lines, 500u);
  EXPECT_LE(r.reduced_lines, 5u);
  EXPECT_GE(r.reduction_percent(), 99.0);
  EXPECT_TRUE(planted_crash(r.text));

  // 1-minimal at line granularity: dropping any line loses the crash.
  std::vector<std::string> lines;
  std::istringstream in(r.text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    std::string candidate;
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (i != k) candidate += lines[i] + "\n";
    EXPECT_FALSE(planted_crash(candidate)) << "line " << k << " removable:\n" << r.text;
  }

  ReduceOptions par;
  par.parallel = true;
  EXPECT_EQ(reduce_source(text, "planted_crash.mini", planted_crash, par).text, r.text);
  EXPECT_NE(result_table("planted_crash.mini", r).find("reduction"), std::string::npos);
}

TEST(ReduceSource, RejectsBadInputs) {
  EXPECT_THROW(reduce_source("int main( {", "x.mini", [](const std::string&) { return true; }),
               std::exception);
  EXPECT_THROW(reduce_source("int main() { int x = 1; }", "x.mini",
                             [](const std::string&) { return false; }),
               ReductionError);
}

// ---- subprocess oracles ----------------------------------------------------

TEST(Oracles, CommandOracle) {
  Scratch scratch;
  auto grep = make_command_oracle("grep -q magic", scratch, std::chrono::seconds(10));
  EXPECT_TRUE(grep("int main() { int magic = 1; }"));
  EXPECT_FALSE(grep("int main() { int x = 1; }"));
  auto slow = make_command_oracle("sleep 5; true", scratch, std::chrono::milliseconds(200));
  EXPECT_FALSE(slow("x"));
  auto missing = make_command_oracle("/nonexistent/tool", scratch, std::chrono::seconds(5));
  EXPECT_THROW(missing("x"), std::exception);
}

TEST(Oracles, CrashOracleUsesAnalyzerBinary) {
  Scratch scratch;
  auto crash = make_crash_oracle(ABSINT_BINARY, config_path("intervals"), "planted crash", scratch,
                                 std::chrono::seconds(30));
  EXPECT_TRUE(crash(read_text(fixture("planted_crash.mini"))));
  EXPECT_FALSE(crash(read_text(fixture("toy.mini"))));
  auto other = make_crash_oracle(ABSINT_BINARY, config_path("intervals"), "something else", scratch,
                                 std::chrono::seconds(30));
  EXPECT_FALSE(other(read_text(fixture("planted_crash.mini"))));
}

TEST(Oracles, DifferentialOracle) {
  Scratch scratch;
  auto any = make_differential_oracle(ABSINT_BINARY, fixture("faulty_rand.json"),
                                      config_path("intervals"), std::nullopt, scratch,
                                      std::chrono::seconds(30));
  EXPECT_TRUE(any(read_text(fixture("differential.mini"))));
  EXPECT_FALSE(any(read_text(fixture("toy.mini"))));
  auto swapped = make_differential_oracle(ABSINT_BINARY, config_path("intervals"),
                                          fixture("faulty_rand.json"), std::nullopt, scratch,
                                          std::chrono::seconds(30));
  EXPECT_FALSE(swapped(read_text(fixture("differential.mini"))));
}

TEST(Oracles, ReportsDisagree) {
  engine::Report a, b;
  engine::CheckRecord c;
  c.kind = engine::CheckKind::division_by_zero;
  c.loc = {"dir/p.mini", 109, 15};
  c.status = engine::CheckStatus::safe;
  a.checks.push_back(c);
  c.status = engine::CheckStatus::alarm;
  b.checks.push_back(c);
  EXPECT_TRUE(reports_disagree(a, b, std::nullopt));
  EXPECT_FALSE(reports_disagree(b, a, std::nullopt));
  auto spec = parse_check_spec("p.mini:109:DivisionByZero");
  EXPECT_EQ(spec.line, 109);
  EXPECT_TRUE(reports_disagree(a, b, spec));
  EXPECT_TRUE(reports_disagree(b, a, spec));
  EXPECT_FALSE(reports_disagree(a, b, parse_check_spec("p.mini:108:DivisionByZero")));
  b.crash = engine::CrashInfo{"boom", std::nullopt};
  EXPECT_FALSE(reports_disagree(a, b, std::nullopt));
  EXPECT_THROW(parse_check_spec("p.mini:x:DivisionByZero"), std::invalid_argument);
}

}  // namespace
}  // namespace absint::testing
