#include "simplex_operad/scalar.hpp"

#include <gtest/gtest.h>

#include <limits>

using simplex_operad::Mode;
using simplex_operad::Scalar;

TEST(Scalar, FractionsParseExactInLowestTerms) {
  Scalar s = Scalar::parse("2/12");
  EXPECT_TRUE(s.is_exact());
  EXPECT_EQ(s.str(), "1/6");
  EXPECT_EQ(Scalar::parse(" 3 ").str(), "3");
  EXPECT_EQ(Scalar::parse("-1/2").str(), "-1/2");
}

TEST(Scalar, DecimalsParseAsFloat) {
  Scalar s = Scalar::parse("0.25");
  EXPECT_EQ(s.mode(), Mode::floating);
  EXPECT_DOUBLE_EQ(s.to_double(), 0.25);
  EXPECT_EQ(Scalar::parse("1e-3").mode(), Mode::floating);
}

TEST(Scalar, MalformedInputThrows) {
  for (const char* bad : {"", "1/", "/2", "1/0", "1//2", "abc", "0.5/2", "1.2.3"})
    EXPECT_THROW(Scalar::parse(bad), std::invalid_argument) << bad;
  EXPECT_THROW(Scalar(std::numeric_limits<double>::infinity()), std::invalid_argument);
  EXPECT_THROW(Scalar(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  EXPECT_THROW(Scalar(1, 0), std::invalid_argument);
}

TEST(Scalar, ExactArithmeticStaysExact) {
  Scalar a(1, 3), b(1, 6);
  EXPECT_EQ((a + b).str(), "1/2");
  EXPECT_EQ((a - b).str(), "1/6");
  EXPECT_EQ((a * b).str(), "1/18");
  EXPECT_EQ((a / b).str(), "2");
  EXPECT_TRUE((a * b).is_exact());
  EXPECT_THROW(a / Scalar(0), std::domain_error);
}

TEST(Scalar, MixingWithFloatGivesFloat) {
  Scalar s = Scalar(1, 2) + Scalar(0.25);
  EXPECT_FALSE(s.is_exact());
  EXPECT_DOUBLE_EQ(s.to_double(), 0.75);
}

TEST(Scalar, EqualityComparesValuesAcrossModes) {
  EXPECT_EQ(Scalar(1, 2), Scalar(0.5));
  EXPECT_NE(Scalar(1, 3), Scalar(1.0 / 3.0));
  EXPECT_LT(Scalar(1, 3), Scalar(1, 2));
  EXPECT_GT(Scalar(0.75), Scalar(1, 2));
}

TEST(Scalar, DoublesConvertToRationalWithoutRounding) {
  EXPECT_EQ(Scalar(0.1).to_rational(), mpq_class(0.1));
  EXPECT_NE(Scalar(0.1).to_rational(), mpq_class(1, 10));
}

TEST(Scalar, AbsDifferenceNeverHidesAnExactGap) {
  mpq_class tiny(1);
  tiny /= mpq_class("1" + std::string(400, '0'));
  Scalar a{mpq_class(tiny)}, b(0);
  EXPECT_GT(simplex_operad::abs_difference(a, b), 0.0);
  EXPECT_EQ(simplex_operad::abs_difference(Scalar(1, 3), Scalar(1, 3)), 0.0);
}

TEST(Scalar, FloatStringsRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 2.5e-300, 0.0, -0.0, 12345.678}) {
    Scalar s(v);
    EXPECT_EQ(Scalar::parse(s.str()).to_double(), v + 0.0);
  }
  EXPECT_EQ(simplex_operad::format_double(-0.0), "0");
}
