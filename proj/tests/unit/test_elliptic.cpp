#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "classsieve/arithmetic.hpp"
#include "classsieve/elliptic.hpp"
#include "classsieve/sigma.hpp"
#include "oracles.hpp"

using namespace classsieve;

namespace {

const WeierstrassCoefficients k203a1{0, -1, 1, 20, -8};

CurveData curve_203(std::int64_t ell = 5, bool asserted = true) {
  return make_curve(k203a1, 203, ell, asserted);
}

bool mentions(const std::vector<std::string>& reasons, const std::string& needle) {
  return std::any_of(reasons.begin(), reasons.end(),
                     [&](const std::string& r) { return r.find(needle) != std::string::npos; });
}

// Independent recount: fundamental D with squarefree part coprime to ell N, the
// prescribed symbols at 7 and 29, and ell not dividing h(D).
std::vector<std::int64_t> brute_twists_203(std::int64_t ell, std::int64_t x) {
  std::vector<std::int64_t> out;
  for (std::int64_t a = 3; a < x; ++a) {
    if (!oracle::is_fundamental(-a)) continue;
    const std::int64_t d = a % 4 == 0 ? -a / 4 : -a;
    if (oracle::gcd(-d, ell * 203) != 1) continue;
    if (oracle::kronecker(d, 7) != -1 || oracle::kronecker(d, 29) != 1) continue;
    if (oracle::class_number(-a) % ell == 0) continue;
    out.push_back(-a);
  }
  return out;
}

}  // namespace

TEST(Invariants, Examples) {
  const CurveData a = derive_invariants({0, 0, 0, 0, 1});
  EXPECT_EQ(a.delta, -432);
  EXPECT_EQ(a.c4, 0);
  EXPECT_EQ(a.j_num, 0);
  const CurveData b = derive_invariants({0, 0, 0, -1, 0});
  EXPECT_EQ(b.delta, 64);
  EXPECT_EQ(b.j_num, 1728);
  EXPECT_EQ(b.j_den, 1);
  EXPECT_THROW(derive_invariants({0, 0, 0, 0, 0}), std::domain_error);
  EXPECT_THROW(derive_invariants({0, 0, 0, -3, 2}), std::domain_error);
}

TEST(Invariants, Curve203) {
  const CurveData e = curve_203();
  EXPECT_EQ(e.b2, -4);
  EXPECT_EQ(e.b4, 40);
  EXPECT_EQ(e.b6, -31);
  EXPECT_EQ(e.b8, -369);
  EXPECT_EQ(e.c4, -944);
  EXPECT_EQ(e.c6, 1000);
  EXPECT_EQ(e.delta, -487403);
  EXPECT_EQ(e.delta, -7LL * 7 * 7 * 7 * 7 * 29);
  EXPECT_EQ(e.j_num, 841232384);
  EXPECT_EQ(e.j_den, 487403);
}

TEST(Invariants, FuzzedIdentities) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::int64_t> coef(-60, 60);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const WeierstrassCoefficients a{coef(rng) % 3, coef(rng), coef(rng) % 3, coef(rng), coef(rng)};
    const std::int64_t b2 = a.a1 * a.a1 + 4 * a.a2;
    const std::int64_t b4 = 2 * a.a4 + a.a1 * a.a3;
    const std::int64_t b6 = a.a3 * a.a3 + 4 * a.a6;
    const std::int64_t b8 =
        a.a1 * a.a1 * a.a6 + 4 * a.a2 * a.a6 - a.a1 * a.a3 * a.a4 + a.a2 * a.a3 * a.a3 - a.a4 * a.a4;
    const std::int64_t c4 = b2 * b2 - 24 * b4;
    const std::int64_t c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    const __int128 lhs = static_cast<__int128>(c4) * c4 * c4 - static_cast<__int128>(c6) * c6;
    if (lhs == 0) {
      EXPECT_THROW(derive_invariants(a), std::domain_error);
      continue;
    }
    const CurveData e = derive_invariants(a);
    ASSERT_EQ(e.b8, b8);
    ASSERT_EQ(4 * e.b8, e.b2 * e.b6 - e.b4 * e.b4);
    ASSERT_EQ(e.c4, c4);
    ASSERT_EQ(e.c6, c6);
    ASSERT_EQ(static_cast<__int128>(e.delta) * 1728, lhs);
    ASSERT_GT(e.j_den, 0);
    ASSERT_EQ(static_cast<__int128>(e.j_num) * e.delta, static_cast<__int128>(c4) * c4 * c4 * e.j_den);
    ++checked;
  }
  EXPECT_GT(checked, 1900);
}

TEST(Twist, PreservesJ) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> coef(-2, 2);
  const std::int64_t ds[] = {-1, 2, -3};
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const WeierstrassCoefficients a{coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)};
    CurveData e;
    try {
      e = derive_invariants(a);
    } catch (const std::domain_error&) {
      continue;
    }
    for (std::int64_t d : ds) {
      try {
        const CurveData t = quadratic_twist(e, d);
        ASSERT_EQ(t.j_num, e.j_num);
        ASSERT_EQ(t.j_den, e.j_den);
        ++checked;
      } catch (const std::overflow_error&) {
      }
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(Reduction, Curve203) {
  const CurveData e = curve_203();
  const ReductionInfo r7 = reduction_at(e, 7);
  EXPECT_EQ(r7.kind, ReductionKind::multiplicative_split);
  EXPECT_EQ(r7.ord_delta, 5);
  EXPECT_EQ(r7.ord_j, -5);
  EXPECT_TRUE(r7.is_tate());
  const ReductionInfo r29 = reduction_at(e, 29);
  EXPECT_EQ(r29.kind, ReductionKind::multiplicative_nonsplit);
  EXPECT_EQ(r29.ord_j, -1);
  EXPECT_FALSE(r29.is_tate());
  EXPECT_TRUE(r29.is_multiplicative());
  const ReductionInfo r5 = reduction_at(e, 5);
  EXPECT_EQ(r5.kind, ReductionKind::good);
  EXPECT_EQ(r5.ord_j, 0);
  EXPECT_THROW(reduction_at(e, 2), std::invalid_argument);
  EXPECT_THROW(reduction_at(e, 9), std::invalid_argument);
}

TEST(Reduction, KnownCurves) {
  // 11a1: split at 11.
  const CurveData e11 = derive_invariants({0, -1, 1, -10, -20});
  EXPECT_EQ(e11.delta, -161051);
  EXPECT_EQ(reduction_at(e11, 11).kind, ReductionKind::multiplicative_split);
  // 15a1: nonsplit at 3, split at 5.
  const CurveData e15 = derive_invariants({1, 1, 1, -10, -10});
  EXPECT_EQ(reduction_at(e15, 3).kind, ReductionKind::multiplicative_nonsplit);
  EXPECT_EQ(reduction_at(e15, 5).kind, ReductionKind::multiplicative_split);
  // y^2 = x^3 + 1 is additive at 3.
  EXPECT_EQ(reduction_at(derive_invariants({0, 0, 0, 0, 1}), 3).kind, ReductionKind::additive);
  EXPECT_EQ(reduction_at(derive_invariants({0, 0, 0, -1, 0}), 3).kind, ReductionKind::good);
}

TEST(Reduction, NonMinimalModelIsMinimalised) {
  const CurveData e = curve_203();
  // The twist-by-1 model scales c4, c6 by 6^4, 6^6; it is not minimal at 3.
  const CurveData scaled = quadratic_twist(e, 1);
  EXPECT_EQ(valuation(scaled.delta, 3), 12);
  const ReductionInfo r3 = reduction_at(scaled, 3);
  EXPECT_EQ(r3.kind, ReductionKind::good);
  EXPECT_EQ(r3.ord_delta, 0);
  EXPECT_EQ(reduction_at(scaled, 7).kind, ReductionKind::multiplicative_split);
  EXPECT_EQ(reduction_at(scaled, 7).ord_delta, 5);
}

TEST(Reduction, TwistByMinusOneSwapsSplitAtSeven) {
  const CurveData t = quadratic_twist(curve_203(), -1);
  // (-1/7) = -1 flips split and nonsplit; (-1/29) = 1 keeps it.
  EXPECT_EQ(reduction_at(t, 7).kind, ReductionKind::multiplicative_nonsplit);
  EXPECT_EQ(reduction_at(t, 29).kind, ReductionKind::multiplicative_nonsplit);
  // Twisting by -3 makes 3 additive.
  EXPECT_EQ(reduction_at(quadratic_twist(curve_203(), -3), 3).kind, ReductionKind::additive);
}

TEST(Conductor, Validation) {
  EXPECT_TRUE(validate_conductor(curve_203()).empty());
  EXPECT_FALSE(validate_conductor(make_curve(k203a1, 7, 5, true)).empty());
  EXPECT_FALSE(validate_conductor(make_curve(k203a1, 7 * 7 * 29, 5, true)).empty());
  EXPECT_TRUE(mentions(validate_conductor(make_curve(k203a1, 406, 5, true)), "even"));
  EXPECT_FALSE(validate_conductor(make_curve(k203a1, 0, 5, true)).empty());
}

TEST(FreySets, Curve203) {
  const FreySets s = frey_sets(curve_203());
  EXPECT_EQ(s.s_tilde, std::vector<std::int64_t>{29});
  EXPECT_EQ(s.t_plus, std::vector<std::int64_t>{29});
  EXPECT_EQ(s.t_minus, std::vector<std::int64_t>{7});
  EXPECT_EQ(twist_conditions(curve_203()), (LocalConditions{5, {}, {29}, {7}}));
  EXPECT_THROW(frey_sets(make_curve(k203a1, 406, 5, true)), std::invalid_argument);
  EXPECT_THROW(frey_sets(make_curve(k203a1, 0, 5, true)), std::invalid_argument);
  // 29 = -1 mod 5 breaks hypothesis (2) for the twist conditions.
  EXPECT_FALSE(validate(twist_conditions(curve_203())).empty());
}

TEST(FreyCondition, Examples) {
  const CurveData e = curve_203();
  const FreyCheck minus_two = frey_condition(e, -2);
  EXPECT_FALSE(minus_two.holds());
  EXPECT_EQ(minus_two.failing_prime, 29);
  EXPECT_FALSE(minus_two.parity_applies);
  EXPECT_FALSE(minus_two.ell_applies);
  const FreyCheck minus_one = frey_condition(e, -1);
  EXPECT_TRUE(minus_one.holds());
  ASSERT_EQ(minus_one.symbols.size(), 2u);
  EXPECT_EQ(minus_one.symbols[0].p, 7);
  EXPECT_EQ(minus_one.symbols[0].required, -1);
  EXPECT_EQ(minus_one.symbols[1].p, 29);
  EXPECT_EQ(minus_one.symbols[1].required, 1);
  EXPECT_THROW(frey_condition(e, -7), std::invalid_argument);
  EXPECT_THROW(frey_condition(e, -5), std::invalid_argument);
  EXPECT_THROW(frey_condition(e, -4), std::invalid_argument);
  EXPECT_THROW(frey_condition(e, 3), std::invalid_argument);
}

TEST(FreyCondition, SymbolsMatchOracle) {
  const CurveData e = curve_203();
  for (std::int64_t d = -1; d >= -3000; --d) {
    if (!oracle::is_squarefree(-d) || oracle::gcd(-d, 5 * 203) != 1) continue;
    const bool expected = oracle::kronecker(d, 7) == -1 && oracle::kronecker(d, 29) == 1;
    ASSERT_EQ(frey_condition(e, d).holds(), expected) << d;
  }
}

TEST(Hypotheses, Curve203FailsOnlyOnSTilde) {
  const CurveHypotheses h = curve_hypotheses(curve_203());
  EXPECT_TRUE(h.odd_conductor);
  EXPECT_TRUE(h.conductor_issues.empty());
  EXPECT_TRUE(h.t_primes_one_mod_ell.empty());
  EXPECT_EQ(h.ord_ell_j, 0);
  EXPECT_TRUE(h.torsion_asserted);
  EXPECT_FALSE(h.all_hold());
  ASSERT_EQ(h.failures().size(), 1u);
  EXPECT_TRUE(mentions(h.failures(), "29"));
  EXPECT_TRUE(curve_hypotheses(curve_203(11)).all_hold());
}

TEST(RankZero, RefusedWhenHypothesesFail) {
  const RankZeroResult r = rank_zero_twists(curve_203(), 1000);
  EXPECT_TRUE(r.refused);
  EXPECT_FALSE(r.hypotheses_overridden);
  EXPECT_TRUE(r.twists.empty());
  EXPECT_TRUE(mentions(r.refusal_reasons, "29"));
}

TEST(RankZero, TorsionAssertionCannotBeOverridden) {
  const RankZeroResult r = rank_zero_twists(curve_203(5, false), 1000, RankZeroOptions{kDefaultTableCeiling, 1, true});
  EXPECT_TRUE(r.refused);
  EXPECT_TRUE(mentions(r.refusal_reasons, "torsion"));
  const RankZeroResult r11 = rank_zero_twists(curve_203(11, false), 1000);
  EXPECT_TRUE(r11.refused);
}

TEST(RankZero, EvenConductorRefusedEvenWithOverride) {
  const RankZeroResult r =
      rank_zero_twists(make_curve(k203a1, 406, 5, true), 1000, RankZeroOptions{kDefaultTableCeiling, 1, true});
  EXPECT_TRUE(r.refused);
}

TEST(RankZero, OverrideMatchesBruteForce) {
  const RankZeroResult r = rank_zero_twists(curve_203(), 10000, RankZeroOptions{kDefaultTableCeiling, 2, true});
  EXPECT_FALSE(r.refused);
  EXPECT_TRUE(r.hypotheses_overridden);
  std::vector<std::int64_t> got;
  std::int64_t even = 0;
  for (const auto& t : r.twists) {
    got.push_back(t.d);
    if (t.d % 2 == 0) ++even;
    ASSERT_EQ(t.h, oracle::class_number(t.d));
    ASSERT_NE(t.h % 5, 0);
    ASSERT_TRUE(t.frey.holds());
    ASSERT_EQ(t.frey.d, t.d % 4 == 0 ? t.d / 4 : t.d);
    for (const auto& s : t.frey.symbols) ASSERT_EQ(s.actual, oracle::kronecker(t.frey.d, s.p));
  }
  EXPECT_EQ(got, brute_twists_203(5, 10000));
  EXPECT_EQ(r.even_count, even);
  EXPECT_EQ(got.size(), 407u);
  EXPECT_EQ(even, 132);
}

TEST(RankZero, SmallBoundsAndErrors) {
  const RankZeroOptions opts{kDefaultTableCeiling, 1, true};
  EXPECT_TRUE(rank_zero_twists(curve_203(), 2, opts).twists.empty());
  EXPECT_TRUE(rank_zero_twists(curve_203(), 3, opts).twists.empty());
  EXPECT_THROW(rank_zero_twists(curve_203(), 0, opts), std::invalid_argument);
  EXPECT_THROW(rank_zero_twists(curve_203(), 5000, RankZeroOptions{1000, 1, true}), std::length_error);
  const ClassNumberTable table = ClassNumberTable::build(100);
  EXPECT_THROW(rank_zero_twists(curve_203(), 500, table, true), std::invalid_argument);
}

TEST(RankZero, ContainedInSearchForTwistConditions) {
  const std::int64_t x = 30000;
  const ClassNumberTable table = ClassNumberTable::build(x - 1);
  const RankZeroResult r = rank_zero_twists(curve_203(), x, table, true);
  const auto hits = search_discriminants(twist_conditions(curve_203()), x, table);
  std::vector<std::int64_t> coprime_hits;
  for (const auto& hit : hits) {
    if (hit.d % 5 != 0) coprime_hits.push_back(hit.d);
  }
  std::vector<std::int64_t> twists;
  for (const auto& t : r.twists) twists.push_back(t.d);
  EXPECT_EQ(twists, coprime_hits);
}

TEST(RankZero, HypothesesHoldForEllEleven) {
  const RankZeroResult r = rank_zero_twists(curve_203(11), 5000);
  EXPECT_FALSE(r.refused);
  EXPECT_FALSE(r.hypotheses_overridden);
  EXPECT_TRUE(r.refusal_reasons.empty());
  std::vector<std::int64_t> got;
  for (const auto& t : r.twists) got.push_back(t.d);
  EXPECT_EQ(got, brute_twists_203(11, 5000));
  EXPECT_FALSE(got.empty());
}
