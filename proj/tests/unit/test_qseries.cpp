#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>

#include "classsieve/arithmetic.hpp"
#include "classsieve/levels.hpp"
#include "classsieve/qseries.hpp"
#include "classsieve/sigma.hpp"
#include "oracles.hpp"
#include "sigma_generator.hpp"

using namespace classsieve;

namespace {

Rational oracle_h(std::int64_t n) { return Rational(oracle::hurwitz12(n), 12); }

}  // namespace

TEST(Zagier, SmallTruncations) {
  const QSeries f4 = zagier_series(4);
  EXPECT_EQ(f4.level(), 4);
  EXPECT_EQ(f4.holomorphic(), (Coefficients{{0, Rational(-1, 12)}, {3, Rational(1, 3)}, {4, Rational(1, 2)}}));
  EXPECT_EQ(f4.shadow_slots(), (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(f4.shadow_constant(), Rational(1));
  EXPECT_EQ(f4.shadow_weight(4), Rational(2));

  const QSeries f1 = zagier_series(1);
  EXPECT_EQ(f1.holomorphic(), (Coefficients{{0, Rational(-1, 12)}}));
  EXPECT_EQ(f1.shadow_slots(), (std::vector<std::int64_t>{1}));

  const QSeries f10 = zagier_series(10);
  EXPECT_EQ(f10.coefficient(7), Rational(1));
  EXPECT_EQ(f10.coefficient(8), Rational(1));
}

TEST(Zagier, HoloMatchesHurwitzOracle) {
  const QSeries f = zagier_series(2000);
  for (std::int64_t n = 0; n <= 2000; ++n) ASSERT_EQ(f.coefficient(n), oracle_h(n)) << n;
}

TEST(Twist, SquaredSymbol) {
  const QSeries f = twist(zagier_series(9), DirichletTwist::squared(3));
  EXPECT_TRUE(f.coefficient(3).is_zero());
  EXPECT_EQ(f.coefficient(4), Rational(1, 2));
  EXPECT_EQ(f.shadow_slots(), (std::vector<std::int64_t>{1, 2}));
  EXPECT_TRUE(f.shadow_constant().is_zero());
  EXPECT_EQ(f.level(), 36);
  EXPECT_EQ(twist(f, DirichletTwist::squared(3)).holomorphic(), f.holomorphic());
}

TEST(Twist, QuadraticSymbolOnShadowSlots) {
  const QSeries z = zagier_series(400);
  const QSeries f = twist(z, DirichletTwist::quadratic(7));
  const Rational sign(kronecker(-1, 7));
  for (std::int64_t n = 1; n <= 20; ++n) {
    const Rational expected = n % 7 == 0 ? Rational(0) : z.shadow_weight(n * n) * sign;
    ASSERT_EQ(f.shadow_weight(n * n), expected) << n;
    ASSERT_EQ(Rational(oracle::kronecker(-n * n, 7)), n % 7 == 0 ? Rational(0) : sign);
  }
}

TEST(Operators, UOperatorExamples) {
  const QSeries z = zagier_series(12);
  EXPECT_EQ(u_operator(z, 1), z);
  const QSeries u = u_operator(z, 4);
  EXPECT_EQ(u.truncation(), 3);
  EXPECT_EQ(u.holomorphic(),
            (Coefficients{{0, Rational(-1, 12)}, {1, Rational(1, 2)}, {2, Rational(1)}, {3, Rational(4, 3)}}));
  const QSeries u3 = u_operator(zagier_series(100), 3);
  EXPECT_TRUE(u3.shadow_slots().empty());
  EXPECT_EQ(u3.shadow_constant(), Rational(1));
}

TEST(Operators, VOperatorAlgebra) {
  const QSeries z = zagier_series(300);
  EXPECT_EQ(v_operator(z, 1), z);
  for (std::int64_t d : {2, 3, 5, 6, 15}) {
    const QSeries uv = u_operator(v_operator(z, d), d);
    EXPECT_EQ(uv.holomorphic(), z.holomorphic()) << d;
    EXPECT_EQ(uv.shadow(), z.shadow()) << d;
    const QSeries vu = v_operator(u_operator(z, d), d);
    for (const auto& [n, c] : vu.holomorphic()) {
      ASSERT_EQ(n % d, 0);
      ASSERT_EQ(c, z.coefficient(n));
    }
    for (std::int64_t n = 0; n <= vu.truncation(); n += d) ASSERT_EQ(vu.coefficient(n), z.coefficient(n));
  }
}

TEST(LinearCombination, CancelsAndIsBilinear) {
  const QSeries z = zagier_series(50);
  EXPECT_TRUE(linear_combination({{Rational(1), z}, {Rational(-1), z}}).is_zero());
  const QSeries t = twist(z, DirichletTwist::quadratic(5));
  const QSeries lhs = linear_combination({{Rational(2, 3), z}, {Rational(5), t}});
  for (std::int64_t n = 0; n <= 50; ++n) {
    ASSERT_EQ(lhs.coefficient(n), Rational(2, 3) * z.coefficient(n) + Rational(5) * t.coefficient(n));
  }
  EXPECT_EQ(lhs.level(), 100);
  EXPECT_THROW(linear_combination({{Rational(1), z}, {Rational(1), zagier_series(40)}}), std::invalid_argument);
}

TEST(LinearCombination, HalfSumForInertAtSeven) {
  const QSeries z = zagier_series(50);
  const QSeries t = twist(z, DirichletTwist::quadratic(7));
  const QSeries f = linear_combination({{Rational(1, 2), z}, {Rational(-kronecker(-1, 7), 2), t}});
  for (std::int64_t n = 1; n <= 50; ++n) {
    const int s = oracle::kronecker(-n, 7);
    const Rational expected = s == -1 ? oracle_h(n) : (s == 0 ? oracle_h(n) / Rational(2) : Rational(0));
    ASSERT_EQ(f.coefficient(n), expected) << n;
  }
  for (std::int64_t slot : f.shadow_slots()) EXPECT_EQ(slot % 7, 0) << slot;
}

TEST(Sieve, InertAndSplit) {
  const QSeries z = zagier_series(50);
  const QSeries inert = sieve_inert(z, 7);
  EXPECT_EQ(inert.coefficient(3), oracle::kronecker(-3, 7) == -1 ? oracle_h(3) : Rational(0));
  for (std::int64_t n = 7; n <= 50; n += 7) EXPECT_TRUE(inert.coefficient(n).is_zero());
  EXPECT_EQ(sieve_inert(inert, 7).holomorphic(), inert.holomorphic());

  const QSeries split = sieve_split(z, 3);
  EXPECT_EQ(split.coefficient(8), Rational(1));
  for (std::int64_t n = 3; n <= 50; n += 3) EXPECT_TRUE(split.coefficient(n).is_zero());
  EXPECT_TRUE(sieve_inert(split, 3).holomorphic().empty());
}

TEST(Sieve, SupportMatchesKroneckerOracle) {
  const QSeries z = zagier_series(1000);
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    const QSeries inert = sieve_inert(z, p);
    const QSeries split = sieve_split(z, p);
    for (std::int64_t n = 1; n <= 1000; ++n) {
      const int s = oracle::kronecker(-n, p);
      ASSERT_EQ(inert.coefficient(n), s == -1 ? oracle_h(n) : Rational(0)) << p << ' ' << n;
      ASSERT_EQ(split.coefficient(n), s == 1 ? oracle_h(n) : Rational(0)) << p << ' ' << n;
    }
    EXPECT_TRUE(inert.shadow_empty());
    // The split combination keeps every slot prime to p; only an inert sieve annihilates.
    EXPECT_FALSE(split.shadow_empty());
    for (std::int64_t slot : split.shadow_slots()) ASSERT_NE(slot % p, 0);
  }
}

TEST(Sieve, Ramified) {
  const QSeries z = zagier_series(100);
  EXPECT_EQ(sieve_ramified(z, {}), z);
  const std::vector<std::int64_t> s0{3};
  const QSeries f = sieve_ramified(z, s0);
  EXPECT_EQ(f.coefficient(15), Rational(2));
  EXPECT_TRUE(f.coefficient(9).is_zero());
  for (std::int64_t n = 1; n <= 99; ++n) {
    const bool survives = n % 3 == 0 && (n / 3) % 3 != 0;
    ASSERT_EQ(f.coefficient(n), survives ? oracle_h(n) : Rational(0)) << n;
  }
}

TEST(BuildHSigma, ExampleAgainstASigma) {
  const LocalConditions sigma{5, {}, {3}, {7}};
  const QSeries f = build_h_sigma(sigma, 200);
  EXPECT_TRUE(f.shadow_empty());
  for (std::int64_t n = 1; n <= 200; ++n) {
    const bool in = in_A_sigma(n, sigma);
    ASSERT_EQ(f.coefficient(n), in ? oracle_h(n) : Rational(0)) << n;
    if (n % 9 == 0 || n % 49 == 0) ASSERT_TRUE(f.coefficient(n).is_zero()) << n;
  }
}

TEST(BuildHSigma, GeneratedSigmasAreHolomorphicWithExactSupport) {
  const auto sigmas = testing_support::valid_sigmas(25, 20261015, 13, {5, 7, 11});
  ASSERT_EQ(sigmas.size(), 25u);
  for (const auto& sigma : sigmas) {
    const QSeries f = build_h_sigma(sigma, 500);
    ASSERT_TRUE(f.shadow_empty());
    const LocalConditions eff = effective_conditions(sigma);
    for (std::int64_t n = 1; n <= 500; ++n) {
      const bool in = in_A_sigma(n, eff);
      ASSERT_EQ(!f.coefficient(n).is_zero(), in) << n;
      if (in) ASSERT_EQ(f.coefficient(n), oracle_h(n)) << n;
    }
    const BoundReport bounds = bound_report(sigma);
    if (bounds.n_sigma) EXPECT_EQ(*bounds.n_sigma % f.level(), 0) << f.level();
  }
}

TEST(BuildHSigma, RejectsInvalidSigma) {
  EXPECT_THROW(build_h_sigma(LocalConditions{5, {}, {19}, {}}, 100), std::invalid_argument);
  EXPECT_THROW(build_h_sigma(LocalConditions{5, {}, {3}, {}}, 0), std::invalid_argument);
}

TEST(BuildF, CoefficientsFromHSigma) {
  const LocalConditions sigma{5, {}, {3}, {7}};
  const std::int64_t p = 11;
  const std::int64_t t = 2000 / p;
  const QSeries f = build_F(sigma, p, t);
  const QSeries h = build_h_sigma(sigma, p * t);
  for (std::int64_t n = 1; n <= t; ++n) {
    Rational expected = h.coefficient(n * p);
    if (n % p == 0) expected -= Rational(p) * h.coefficient(n / p);
    ASSERT_EQ(f.coefficient(n), expected) << n;
  }
  EXPECT_THROW(build_F(sigma, 3, 10), std::invalid_argument);
  EXPECT_THROW(build_F(sigma, 5, 10), std::invalid_argument);
  EXPECT_THROW(build_F(sigma, 12, 10), std::invalid_argument);
}

TEST(OrdEll, Examples) {
  EXPECT_EQ(ord_ell(zagier_series(30), 5), 3);
  EXPECT_EQ(ord_ell(QSeries(30, 4), 5), std::nullopt);
  QSeries single(10, 4);
  single.set_coefficient(7, Rational(35, 12));
  EXPECT_EQ(ord_ell(single, 5), std::nullopt);
  EXPECT_EQ(ord_ell(single, 7), std::nullopt);
  EXPECT_EQ(ord_ell(single, 11), 7);
  EXPECT_THROW(ord_ell(single, 3), std::invalid_argument);
}

TEST(QSeries, BoundsAndCsv) {
  QSeries f(5, 4);
  EXPECT_THROW(f.set_coefficient(6, Rational(1)), std::out_of_range);
  EXPECT_THROW(f.set_shadow(0, Rational(1)), std::out_of_range);
  f.set_coefficient(2, Rational(3, 4));
  f.set_coefficient(3, Rational(0));
  EXPECT_EQ(f.holomorphic().size(), 1u);
  std::ostringstream os;
  f.write_csv(os);
  EXPECT_EQ(os.str(), "n,numerator,denominator\n2,3,4\n");
}

TEST(Theta, GaussIdentity) {
  const QSeries theta = theta_cube(100);
  EXPECT_EQ(theta.coefficient(1), Rational(6));
  EXPECT_EQ(theta.coefficient(3), Rational(8));
  EXPECT_TRUE(theta.coefficient(7).is_zero());
  for (std::int64_t n = 0; n <= 100; ++n) {
    ASSERT_EQ(theta.coefficient(n), Rational(oracle::sum_of_three_squares(n))) << n;
  }
  EXPECT_TRUE(gauss_mismatches(2000).empty());
}
