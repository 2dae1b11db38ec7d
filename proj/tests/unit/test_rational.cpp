#include <gtest/gtest.h>

#include <limits>
#include <sstream>
#include <stdexcept>

#include "classsieve/rational.hpp"

using classsieve::Rational;

TEST(Rational, LowestTermsAndSign) {
  const Rational r(6, -8);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 4);
  EXPECT_EQ(Rational(0, -5), Rational(0));
  EXPECT_EQ(Rational(0, -5).den(), 1);
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
  EXPECT_EQ(-Rational(1, 12), Rational(-1, 12));
  EXPECT_TRUE(Rational(1, 3) < Rational(1, 2));
  EXPECT_TRUE(Rational(4, 2).is_integer());
}

TEST(Rational, Errors) {
  EXPECT_THROW(Rational(1, 0), std::domain_error);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
  const auto big = std::numeric_limits<std::int64_t>::max();
  EXPECT_THROW(Rational(big) + Rational(1), std::overflow_error);
  EXPECT_THROW(Rational(big) * Rational(2), std::overflow_error);
  // Large intermediates that reduce back into range are fine.
  EXPECT_EQ(Rational(big) * Rational(2, big), Rational(2));
}

TEST(Rational, Formatting) {
  EXPECT_EQ(Rational(-1, 12).to_string(), "-1/12");
  EXPECT_EQ(Rational(7).to_string(), "7");
  std::ostringstream os;
  os << Rational(4, 3);
  EXPECT_EQ(os.str(), "4/3");
  EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
}
