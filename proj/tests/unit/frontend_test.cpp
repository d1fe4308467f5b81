// Parser, printer, linker and the concrete reference interpreter.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "absint/frontend/concrete.hpp"
#include "absint/frontend/linker.hpp"
#include "absint/frontend/parser.hpp"
#include "absint/frontend/printer.hpp"
#include "program_gen.hpp"
#include "support.hpp"

namespace absint::testing {
namespace {

using namespace frontend;

TEST(Parser, ParsesToyProgram) {
  Program p = parse_file(fixture("toy.mini"));
  ASSERT_EQ(p.functions.size(), 1u);
  EXPECT_EQ(p.functions[0].name, "main");
  EXPECT_EQ(p.functions[0].params.size(), 1u);
}

TEST(Parser, ReportsLocatedErrors) {
  struct Case {
    const char* text;
    const char* needle;
  };
  const Case cases[] = {
      {"int main() { x = 1; }", "x"},
      {"int main() { int x = 1 }", "1:24"},
      {"int main() { int x = f(1); }", "undefined function 'f'"},
      {"int main() { int x = 1 + g(2); }", "calls are statements"},
      {"int main() { int x = rand(5, 1); }", "rand"},
      {"int main() { int x = 99999999999; }", "too large"},
  };
  for (const auto& c : cases) {
    try {
      parse(c.text, "e.mini");
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(c.needle), std::string::npos) << e.what();
      EXPECT_EQ(e.where().file, "e.mini");
    }
  }
}

TEST(Printer, RoundTripIsStable) {
  std::vector<std::string> corpus;
  for (const char* f : {"toy.mini", "unsound.mini", "div0.mini", "coverage.mini", "heavy.mini",
                        "planted_crash.mini", "differential.mini"})
    corpus.push_back(read_text(fixture(f)));
  for (std::uint32_t seed = 1; seed < 200; ++seed) corpus.push_back(random_program(seed, 15));
  for (const auto& text : corpus) {
    const std::string once = print_program(parse(text, "r.mini"));
    const std::string twice = print_program(parse(once, "r.mini"));
    ASSERT_EQ(once, twice) << text;
  }
}

TEST(Printer, LineMarkersRestoreLocations) {
  const std::string text = read_text(fixture("differential.mini"));
  Program original = parse(text, "differential.mini");
  PrintOptions opts;
  opts.line_markers = true;
  const std::string marked = print_program(original, opts);
  Program again = parse(marked, "elsewhere.mini");
  const std::string report_a = timeless_json(engine::analyze(original, config("intervals")));
  const std::string report_b = timeless_json(engine::analyze(again, config("intervals")));
  EXPECT_EQ(report_a, report_b);
}

TEST(Linker, MergesUnitsAndChecksCalls) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "absint_linker_test";
  fs::create_directories(dir);
  std::ofstream(dir / "lib.mini") << "int twice(int v) {\n  return v + v;\n}\n";
  std::ofstream(dir / "main.mini") << "int main() {\n  int r = twice(3);\n  assert(r == 6);\n}\n";
  std::ofstream(dir / "bad.mini") << "int main() {\n  int r = thrice(3);\n}\n";
  std::ofstream(dir / "project.json")
      << R"({"targets": {"app": {"files": ["lib.mini", "main.mini"]}, "broken": {"files": ["bad.mini"]}}})";
  const auto manifest = load_manifest((dir / "project.json").string());
  Program p = link(manifest, "app");
  ASSERT_EQ(p.functions.size(), 2u);
  EXPECT_EQ(p.functions[0].name, "twice");
  auto r = engine::analyze(p, config("intervals"));
  EXPECT_EQ(r.alarm_count(), 0u);
  bool lib_check = false;
  for (const auto& c : r.checks) lib_check = lib_check || c.loc.file.ends_with("lib.mini");
  EXPECT_TRUE(lib_check);
  EXPECT_ANY_THROW(link(manifest, "broken"));
  EXPECT_THROW(link(manifest, "missing"), LinkError);
  fs::remove_all(dir);
}

InputResolver fixed(std::int64_t rand_value, std::int64_t param) {
  InputResolver in;
  in.rand = [=](const Expr&, std::size_t) { return rand_value; };
  in.param = [=](std::size_t, const std::string&) { return param; };
  return in;
}

TEST(Concrete, ExecutesAndReportsErrors) {
  auto toy = parse_file(fixture("toy.mini"));
  auto ok = interpret_concrete(toy, fixed(0, 3));
  EXPECT_EQ(ok.status, ConcreteOutcome::Status::normal);
  EXPECT_EQ(ok.final_values.at("y"), 2);

  auto div = interpret_concrete(parse_file(fixture("div0.mini")), fixed(4, 0));
  ASSERT_EQ(div.status, ConcreteOutcome::Status::runtime_error);
  EXPECT_EQ(*div.error, RuntimeErrorKind::div_by_zero);
  EXPECT_EQ(div.error_loc->line, 3);

  auto ovf = interpret_concrete(parse("int main() { int x = 2147483647; x++; }", "o.mini"), fixed(0, 0));
  EXPECT_EQ(*ovf.error, RuntimeErrorKind::overflow);

  auto mod = interpret_concrete(parse("int main() { int x = -7 % 3; assert(x == -1); }", "m.mini"),
                                fixed(0, 0));
  EXPECT_EQ(mod.status, ConcreteOutcome::Status::normal);

  auto fail = interpret_concrete(parse("int main() { assert(1 == 2); }", "a.mini"), fixed(0, 0));
  EXPECT_EQ(*fail.error, RuntimeErrorKind::assert_failure);

  ConcreteOptions tight;
  tight.step_budget = 100;
  auto loop = interpret_concrete(parse("int main() { while (1) { } }", "l.mini"), fixed(0, 0), tight);
  EXPECT_EQ(loop.status, ConcreteOutcome::Status::inconclusive);

  EXPECT_THROW(interpret_concrete(parse("int main() { int x = rand(0, 1); }", "r.mini"), fixed(5, 0)),
               std::invalid_argument);
}

TEST(Concrete, RecursionAndPrint) {
  auto p = parse(R"(int fact(int n) {
  if (n <= 1) return 1;
  int r = fact(n - 1);
  return n * r;
}
int main() {
  int v = fact(5);
  print(v);
}
)",
                 "f.mini");
  auto out = interpret_concrete(p, fixed(0, 0));
  EXPECT_EQ(out.final_values.at("v"), 120);
  ASSERT_EQ(out.printed.size(), 1u);
  EXPECT_NE(out.printed[0].find("120"), std::string::npos);
}

}  // namespace
}  // namespace absint::testing
