#include <gtest/gtest.h>

#include "support.hpp"
#include "tstab/errors.hpp"

namespace tstab {
namespace {

using test::Q;
using test::V;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(Q("3/6"), Rational(1, 2));
  EXPECT_EQ(Q("-7"), Rational(-7));
  EXPECT_EQ(Q("0.25"), Rational(1, 4));
  EXPECT_EQ(Q("-1.5"), Rational(-3, 2));
  EXPECT_EQ(Q(" 2/4 "), Rational(1, 2));
}

TEST(Rational, RejectsMalformedInput) {
  EXPECT_THROW(Q(""), ParseError);
  EXPECT_THROW(Q("1/0"), ParseError);
  EXPECT_THROW(Q("abc"), ParseError);
  EXPECT_THROW(Q("1/2/3"), ParseError);
  EXPECT_THROW(V("1,,2"), ParseError);
}

TEST(Rational, PrintsWithExplicitDenominator) {
  EXPECT_EQ(to_pq(Rational(1)), "1/1");
  EXPECT_EQ(to_pq(Rational(-6, 7)), "-6/7");
  EXPECT_EQ(to_pq(Rational(0)), "0/1");
}

TEST(Rational, PrimitiveRescalesPositively) {
  EXPECT_EQ(primitive(V("2/3,4/3")), V("1,2"));
  EXPECT_EQ(primitive(V("-6,9")), V("-2,3"));
  EXPECT_EQ(primitive(V("0,0")), V("0,0"));
}

TEST(Rational, DeterminantSolveInverse) {
  RatMatrix a{V("2,1"), V("1,3")};
  EXPECT_EQ(determinant(a), Rational(5));
  RatVector x;
  ASSERT_TRUE(solve(a, V("3,4"), x));
  EXPECT_EQ(x, V("1,1"));
  RatMatrix inv = inverse(a);
  EXPECT_EQ(inv[0], V("3/5,-1/5"));
  EXPECT_EQ(inv[1], V("-1/5,2/5"));
  RatMatrix singular{V("1,2"), V("2,4")};
  EXPECT_EQ(determinant(singular), Rational(0));
  EXPECT_FALSE(solve(singular, V("1,1"), x));
  EXPECT_THROW(inverse(singular), std::domain_error);
  EXPECT_EQ(rank(singular), 1);
}

}  // namespace
}  // namespace tstab
