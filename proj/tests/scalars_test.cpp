#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace lbl;

namespace {

LambdaScalar s2(long a, long b) {
  return LambdaScalar(std::vector<Rational>{Rational(a), Rational(b)});
}

} // namespace

TEST(Scalars, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_pq_string(make_rational(4, 2)), "2/1");
  EXPECT_EQ(to_short_string(make_rational(-3, 9)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Scalars, LexicographicOrderMatchesTupleOrder) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int it = 0; it < 2000; ++it) {
    std::vector<Rational> a{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
    std::vector<Rational> b{Rational(d(rng)), Rational(d(rng)), Rational(d(rng))};
    bool tuple_less = std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    EXPECT_EQ(LambdaScalar(a) < LambdaScalar(b), tuple_less);
    EXPECT_EQ(LambdaScalar(a) == LambdaScalar(b), a == b);
  }
}

TEST(Scalars, OrderIsCompatibleWithAddition) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-5, 5);
  for (int it = 0; it < 1000; ++it) {
    auto a = s2(d(rng), d(rng)), b = s2(d(rng), d(rng)), c = s2(d(rng), d(rng));
    if (a < b) {
      EXPECT_LT(a + c, b + c);
    }
    EXPECT_EQ(abs(a - b), abs(b - a));
    EXPECT_GE(abs(a) + abs(b), abs(a + b));
  }
}

TEST(Scalars, InfinitesimalSecondCoordinate) {
  EXPECT_LT(s2(0, 1000), s2(1, -1000));
  EXPECT_GT(s2(0, 1), s2(0, 0));
  EXPECT_EQ(s2(0, -1).sign(), -1);
}

TEST(Scalars, RankMismatchThrows) {
  LambdaScalar a = LambdaScalar::from_int(1, 1), b = LambdaScalar::from_int(1, 2);
  EXPECT_THROW(a + b, RankMismatch);
  EXPECT_THROW((void)(a < b), RankMismatch);
}

TEST(Scalars, ParseScalar) {
  EXPECT_EQ(parse_scalar("1/2;3", 2),
            LambdaScalar(std::vector<Rational>{make_rational(1, 2), Rational(3)}));
  EXPECT_EQ(parse_scalar("5", 3), scale(Rational(5), LambdaScalar::unit(3)));
  EXPECT_THROW(parse_scalar("1;2;3", 2), Error);
}
