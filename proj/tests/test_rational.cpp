#include "clouds/rational.hpp"

#include <gtest/gtest.h>

#include <random>

#include "clouds/errors.hpp"

namespace clouds {
namespace {

TEST(RationalTest, ParsesExactly) {
  EXPECT_EQ(Rational::parse("0.75"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("3/4"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-2"), Rational(-2));
  EXPECT_EQ(Rational::parse("1e-2"), Rational(1, 100));
  EXPECT_EQ(Rational::parse("1.5E3"), Rational(1500));
  EXPECT_EQ(Rational::parse(" .5 "), Rational(1, 2));
  EXPECT_EQ(Rational::parse("0.1"), Rational(1, 10));
}

TEST(RationalTest, RejectsMalformed) {
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "1e", "--1", ".", "1/-2"}) {
    EXPECT_THROW(Rational::parse(bad), ValidationError) << bad;
  }
}

TEST(RationalTest, CanonicalForm) {
  const Rational r(4, -6);
  EXPECT_EQ(r.numerator_string(), "-2");
  EXPECT_EQ(r.denominator_string(), "3");
  EXPECT_EQ(r.to_string(), "-2/3");
  EXPECT_EQ(Rational(6, 3).to_string(), "2");
  EXPECT_TRUE(Rational(6, 3).is_integer());
  EXPECT_THROW(Rational(1, 0), DomainError);
}

TEST(RationalTest, Decimal) {
  EXPECT_EQ(Rational(2, 3).to_decimal(4), "0.6667");
  EXPECT_EQ(Rational(-2, 3).to_decimal(2), "-0.67");
  EXPECT_EQ(Rational(1, 8).to_decimal(2), "0.13");
  EXPECT_EQ(Rational(5).to_decimal(0), "5");
  EXPECT_EQ(Rational(-1, 1000).to_decimal(2), "0.00");
}

TEST(RationalTest, ArithmeticAndOrder) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_THROW(a / Rational(0), DomainError);
  EXPECT_LT(b, a);
  EXPECT_EQ(abs(Rational(-3, 7)), Rational(3, 7));
  EXPECT_EQ(std::hash<Rational>{}(Rational(2, 4)), std::hash<Rational>{}(Rational(1, 2)));
}

TEST(RationalTest, FieldLawsOnRandomValues) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
  for (int t = 0; t < 300; ++t) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (b != 0) EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ(Rational::parse(a.to_string()), a);
  }
}

}  // namespace
}  // namespace clouds
