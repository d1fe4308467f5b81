// Randomized programs checked by exhaustive concrete execution.
#include <gtest/gtest.h>

#include <cstdlib>

#include "program_gen.hpp"
#include "soundness_check.hpp"
#include "support.hpp"

namespace absint::testing {
namespace {

class Soundness : public ::testing::TestWithParam<const char*> {};

TEST_P(Soundness, RandomProgramsAgainstExhaustiveConcreteRuns) {
  SoundnessStats v;
  // ABSINT_SOUNDNESS_PROGRAMS raises the count for longer offline runs.
  std::uint32_t programs = 250;
  if (const char* env = std::getenv("ABSINT_SOUNDNESS_PROGRAMS"))
    programs = static_cast<std::uint32_t>(std::stoul(env));
  for (std::uint32_t seed = 1; seed <= programs; ++seed) {
    std::string text = random_program(seed);
    auto p = parse_text(text);
    ASSERT_LE(p.statement_count(), 15u) << text;
    ASSERT_LE(rand_sites(p).size(), 3u);
    check_soundness(text, GetParam(), v);
  }
  for (const auto& s : v.samples) ADD_FAILURE() << s;
  EXPECT_EQ(v.errors_missed, 0);
  EXPECT_EQ(v.unreached, 0);
  // The generator must actually exercise the error paths.
  EXPECT_GT(v.concrete_errors, 20);
}

INSTANTIATE_TEST_SUITE_P(AllDomains, Soundness, ::testing::Values("intervals", "zones", "product"));

}  // namespace
}  // namespace absint::testing
