#include "couplecheck/error.hpp"
#include "couplecheck/rational.hpp"

#include <gtest/gtest.h>

using namespace couplecheck;

TEST(Rational, CanonicalForm) {
  const Rational r(6, -8);
  EXPECT_EQ(r.str(), "-3/4");
  EXPECT_EQ(Rational(4).str(), "4/1");
  EXPECT_EQ(Rational(0, 5).str(), "0/1");
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("2/4"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-3/9"), Rational(-1, 3));
  EXPECT_EQ(Rational::parse("+1"), Rational(1));
  EXPECT_EQ(Rational::parse("0"), Rational(0));
  EXPECT_EQ(Rational::parse("123456789012345678901234567890/2").str(), "61728394506172839450617283945/1");
}

TEST(Rational, RejectsFloatsAndGarbage) {
  for (const char* bad : {"0.25", "1e3", ".5", "1/", "/2", "a/b", "1/0", "1/-2", ""}) {
    try {
      Rational::parse(bad);
      FAIL() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
    }
  }
  try {
    Rational::parse("0.25");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("fractions only"), std::string::npos);
  }
}

TEST(Rational, Arithmetic) {
  const Rational a(1, 3);
  const Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(abs(Rational(-7, 10)), Rational(7, 10));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(min(a, b), b);
  EXPECT_EQ(max(a, b), a);
  EXPECT_THROW(a / Rational(0), std::domain_error);
}

TEST(Rational, ParseStrRoundTrip) {
  for (int n = -20; n <= 20; ++n) {
    for (int d = 1; d <= 12; ++d) {
      const Rational r(n, d);
      EXPECT_EQ(Rational::parse(r.str()), r);
    }
  }
}
