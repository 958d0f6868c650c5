#include "couplecheck/scenarios.hpp"
#include "couplecheck/system_file.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace couplecheck;

namespace {

constexpr const char* kPrBox = R"(# PR box
[contents]
A1 A2 B1 B2

[contexts]
11 : A1 B1
12 : A1 B2
21 : A2 B1
22 : A2 B2

[supports]
11 A1 : +1 -1
11 B1 : +1 -1
12 A1 : +1 -1
12 B2 : +1 -1
21 A2 : +1 -1
21 B1 : +1 -1
22 A2 : +1 -1
22 B2 : +1 -1

[bunches]
@ 11
+1 +1 : 1/2
-1 -1 : 1/2
@ 12
+1 +1 : 1/2
-1 -1 : 1/2
@ 21
+1 +1 : 1/2
-1 -1 : 1/2
@ 22
+1 -1 : 1/2
-1 +1 : 1/2
)";

std::string parse_error(std::string_view text) {
  try {
    parse_system_file(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    return e.what();
  }
  ADD_FAILURE() << "parsed";
  return {};
}

}  // namespace

TEST(SystemFile, ParsesPrBox) {
  const auto system = validate_system(parse_system_file(kPrBox));
  EXPECT_EQ(system, build(ScenarioId::PrBox));
  EXPECT_EQ(format_system(system), kPrBox + std::string_view(kPrBox).find('['));
}

TEST(SystemFile, RejectsFloatLiteral) {
  std::string text = kPrBox;
  text.replace(text.find("1/2"), 3, "0.5");
  const auto what = parse_error(text);
  EXPECT_NE(what.find("fractions only"), std::string::npos);
  EXPECT_NE(what.find("line 23, column 9"), std::string::npos);
}

TEST(SystemFile, ReportsLineAndColumn) {
  EXPECT_NE(parse_error("[contents]\nA B\n[nonsense]\n").find("line 3, column 1"), std::string::npos);
  EXPECT_NE(parse_error("[contexts]\nc A B\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("A B\n").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error("[bunches]\n+1 : 1\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error("[bunches]\n@ c\n+1 : 1/0\n").find("line 3, column 6"), std::string::npos);
}

TEST(SystemFile, UnnormalizedBunchFailsValidation) {
  std::string text = kPrBox;
  const auto at = text.rfind("-1 +1 : 1/2");
  text.replace(at, std::string("-1 +1 : 1/2").size(), "-1 +1 : 1/3");
  const auto raw = parse_system_file(text);
  try {
    validate_system(raw);
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_EQ(e.violations()[0].code, ErrorCode::MassNotNormalized);
    EXPECT_EQ(e.violations()[0].section, "bunches");
    EXPECT_EQ(e.violations()[0].line, 31);  // the "@ 22" header
  }
}

TEST(SystemFile, CommentsAndBlankLinesIgnored) {
  const auto text = std::string("\n# header\n\n") + kPrBox + "\n# trailing comment\n";
  EXPECT_EQ(validate_system(parse_system_file(text)), build(ScenarioId::PrBox));
}

TEST(SystemFile, EveryPresetRoundTrips) {
  for (const auto id : all_scenarios()) {
    const auto system = build(id);
    const auto text = format_system(system);
    const auto again = validate_system(parse_system_file(text));
    EXPECT_EQ(again, system) << to_string(id);
    EXPECT_EQ(format_system(again), text) << to_string(id);
  }
}

TEST(SystemFile, RandomSystemsRoundTrip) {
  support::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = cyclic_four_from_tables(support::random_tables(rng));
    const auto text = format_system(s.system());
    EXPECT_EQ(validate_system(parse_system_file(text)), s.system());
  }
}

TEST(Targets, Parse) {
  const auto targets = parse_targets("# wanted\nA1 : 1\nB2 : 3/4\n");
  ASSERT_EQ(targets.size(), 2u);
  EXPECT_EQ(targets[1].content.id, "B2");
  EXPECT_EQ(targets[1].required_equality_probability, Rational(3, 4));
  EXPECT_THROW(parse_targets("A1 : 0.75\n"), Error);
  EXPECT_THROW(parse_targets("A1 3/4\n"), Error);
}
