#include <cstdint>
#include <vector>

#include "classsieve/arithmetic.hpp"
#include "classsieve/classnumbers.hpp"
#include "classsieve/elliptic.hpp"
#include "classsieve/levels.hpp"
#include "classsieve/sigma.hpp"
#include "cli.hpp"
#include "json_util.hpp"

namespace classsieve::cli {

namespace {

constexpr std::int64_t kPaperPrime = 394969;
constexpr std::int64_t kSmallQCeiling = 100;

Json example_one(unsigned threads) {
  (void)threads;
  const LocalConditions sigma{5, {}, {3}, {}};
  const SmallPrimeSurvey survey = small_prime_survey(5, 100, 3);

  Json exceptional_rows = Json::array();
  for (const auto& row : survey.rows) {
    if (row.ell_divides) exceptional_rows.push_back(Json{{"p", row.p}, {"D", row.d}, {"h", row.h}});
  }
  Json readings = Json::array();
  for (const auto& r : survey.readings) {
    readings.push_back(Json{{"label", r.label},
                            {"excluded", r.excluded},
                            {"fields", r.fields},
                            {"split_at_3", r.split},
                            {"matches_paper", r.fields == 21 && r.split == 11}});
  }

  const PrimeConditionReport capped = prime_conditions(kPaperPrime, sigma, kSmallQCeiling);
  const BoundReport bounds = bound_report(sigma);

  Json ceiling_table = Json::array();
  for (std::int64_t q : primes_up_to(37)) {
    if (q == 2 || q == sigma.ell) continue;
    const auto p = least_prime_meeting_conditions(sigma, q, 100'000'000);
    ceiling_table.push_back(Json{{"q_ceiling", q}, {"least_prime", optional_json(p)}});
  }

  // Condition (3) over all odd q <= M_Sigma: the first failure already rules
  // the paper's prime out.
  const std::int64_t literal_ceiling = bounds.m_sigma ? bounds.m_sigma->num() : kSmallQCeiling;
  const PrimeConditionReport literal = prime_conditions(kPaperPrime, sigma, literal_ceiling);

  return Json{
      {"sigma", sigma_json(sigma)},
      {"sigma_valid", validate(sigma).empty()},
      {"exceptional_primes_under_100", survey.exceptional},
      {"paper_exceptional_primes_under_100", {79}},
      {"exceptional_matches_paper", survey.exceptional == std::vector<std::int64_t>{79}},
      {"exceptional_class_numbers", exceptional_rows},
      {"split_at_3_readings", readings},
      {"paper_split_reading", Json{{"fields", 21}, {"split_at_3", 11}}},
      {"paper_prime", kPaperPrime},
      {"paper_prime_conditions",
       Json{{"q_ceiling", capped.q_ceiling},
            {"residue_mod_ell", capped.residue_mod_ell},
            {"one_mod_eight", capped.one_mod_eight},
            {"residue_mod_small_primes", capped.residue_mod_small_primes},
            {"first_failing_q", optional_json(capped.first_failing_q)},
            {"holds", capped.holds()}}},
      {"least_prime_by_q_ceiling", ceiling_table},
      {"bounds", bounds_json(bounds)},
      {"m_sigma_discrepancy",
       Json{{"m_sigma", optional_json(bounds.m_sigma)},
            {"literal_q_ceiling", literal_ceiling},
            {"paper_prime_meets_literal_condition_3", literal.residue_mod_small_primes},
            {"paper_prime_first_failing_q", optional_json(literal.first_failing_q)},
            {"flagged", !literal.residue_mod_small_primes},
            {"note",
             "condition (3) taken over every odd prime q <= M_Sigma excludes the stated prime; "
             "it is verified only for q <= 100 and the least prime meeting each capped version is listed"}}}};
}

Json example_two(unsigned threads) {
  const WeierstrassCoefficients coefficients{0, -1, 1, 20, -8};
  const CurveData e = make_curve(coefficients, 203, 5, true);
  std::vector<std::int64_t> factors;
  for (const auto& pe : factor(static_cast<std::uint64_t>(e.conductor)).factors) {
    factors.push_back(static_cast<std::int64_t>(pe.prime));
  }
  Json reductions = Json::array();
  for (std::int64_t p : {std::int64_t{5}, std::int64_t{7}, std::int64_t{29}}) {
    reductions.push_back(reduction_json(reduction_at(e, p)));
  }
  const CurveHypotheses hypotheses = curve_hypotheses(e);
  const LocalConditions sigma_e = twist_conditions(e);
  Json sigma_e_violations = Json::array();
  for (const auto& v : validate(sigma_e)) sigma_e_violations.push_back(v.message);

  const ClassNumberTable table = ClassNumberTable::build(100'000 - 1, {kDefaultTableCeiling, threads});
  const RankZeroResult gated = rank_zero_twists(e, 100'000, table, false);
  Json counts = Json::array();
  Json first = Json::array();
  bool overridden = false;
  for (std::int64_t x : {std::int64_t{1000}, std::int64_t{10'000}, std::int64_t{100'000}}) {
    const RankZeroResult r = rank_zero_twists(e, x, table, true);
    overridden = overridden || r.hypotheses_overridden;
    counts.push_back(Json{{"x", x}, {"count", r.twists.size()}, {"even_count", r.even_count}});
    if (x == 1000) {
      for (std::size_t i = 0; i < r.twists.size() && i < 10; ++i) {
        first.push_back(Json{{"D", r.twists[i].d}, {"h", r.twists[i].h}});
      }
    }
  }

  return Json{{"curve", "203.a1"},
              {"a_invariants", {coefficients.a1, coefficients.a2, coefficients.a3, coefficients.a4, coefficients.a6}},
              {"conductor", e.conductor},
              {"conductor_factors", factors},
              {"torsion_group_asserted", "Z/5Z"},
              {"ell", e.ell},
              {"invariants", Json{{"b2", e.b2},
                                  {"b4", e.b4},
                                  {"b6", e.b6},
                                  {"b8", e.b8},
                                  {"c4", e.c4},
                                  {"c6", e.c6},
                                  {"delta", e.delta},
                                  {"j_num", e.j_num},
                                  {"j_den", e.j_den}}},
              {"reduction", reductions},
              {"hypotheses", hypotheses_json(hypotheses)},
              {"paper_applies_corollary", true},
              {"hypotheses_match_paper", hypotheses.all_hold()},
              {"gated_run_refused", gated.refused},
              {"sigma_e", sigma_json(sigma_e)},
              {"sigma_e_violations", sigma_e_violations},
              {"hypotheses_overridden", overridden},
              {"twist_counts", counts},
              {"first_twists", first}};
}

}  // namespace

Json paper_examples(unsigned threads) {
  return Json{{"example_1", example_one(threads)}, {"example_2", example_two(threads)}};
}

}  // namespace classsieve::cli
