#include "classsieve/elliptic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "classsieve/arithmetic.hpp"

namespace classsieve {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("curve invariant exceeds 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

int ord_or_infinite(std::int64_t n, std::int64_t p) {
  return n == 0 ? kInfiniteValuation : valuation(n, p);
}

std::vector<std::int64_t> odd_prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> primes;
  const std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  for (const auto& pe : factor(m).factors) {
    if (pe.prime != 2) primes.push_back(static_cast<std::int64_t>(pe.prime));
  }
  return primes;
}

void require_odd_conductor(const CurveData& e) {
  if (e.conductor < 1) throw std::invalid_argument("curve conductor not supplied");
  if (e.conductor % 2 == 0) throw std::invalid_argument("even conductor is not supported");
}

}  // namespace

CurveData derive_invariants(const WeierstrassCoefficients& a) {
  const i128 a1 = a.a1, a2 = a.a2, a3 = a.a3, a4 = a.a4, a6 = a.a6;
  const i128 b2 = a1 * a1 + 4 * a2;
  const i128 b4 = 2 * a4 + a1 * a3;
  const i128 b6 = a3 * a3 + 4 * a6;
  const i128 b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  const i128 c4 = b2 * b2 - 24 * b4;
  const i128 c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  const i128 delta = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  if (delta == 0) throw std::domain_error("singular Weierstrass model (discriminant 0)");

  CurveData e;
  e.a = a;
  e.b2 = narrow(b2);
  e.b4 = narrow(b4);
  e.b6 = narrow(b6);
  e.b8 = narrow(b8);
  e.c4 = narrow(c4);
  e.c6 = narrow(c6);
  e.delta = narrow(delta);

  const std::int64_t c4_sq = checked_mul(e.c4, e.c4);
  const i128 c4_cube = static_cast<i128>(c4_sq) * e.c4;
  if (c4_cube - static_cast<i128>(e.c6) * e.c6 != 1728 * static_cast<i128>(e.delta)) {
    throw std::logic_error("derive_invariants: 1728 delta != c4^3 - c6^2");
  }
  i128 num = c4_cube, den = e.delta;
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  e.j_num = narrow(num);
  e.j_den = narrow(den);
  return e;
}

CurveData make_curve(const WeierstrassCoefficients& a, std::int64_t conductor, std::int64_t ell,
                     bool torsion_hypothesis_asserted) {
  CurveData e = derive_invariants(a);
  e.conductor = conductor;
  e.ell = ell;
  e.torsion_hypothesis_asserted = torsion_hypothesis_asserted;
  return e;
}

CurveData quadratic_twist(const CurveData& e, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("quadratic_twist: D must be nonzero");
  const std::int64_t d2 = checked_mul(d, d);
  const std::int64_t d3 = checked_mul(d2, d);
  WeierstrassCoefficients twisted;
  twisted.a4 = checked_mul(checked_mul(-27, e.c4), d2);
  twisted.a6 = checked_mul(checked_mul(-54, e.c6), d3);
  CurveData out = derive_invariants(twisted);
  out.ell = e.ell;
  return out;
}

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::good: return "good";
    case ReductionKind::multiplicative_split: return "multiplicative_split";
    case ReductionKind::multiplicative_nonsplit: return "multiplicative_nonsplit";
    case ReductionKind::additive: return "additive";
  }
  return "unknown";
}

ReductionInfo reduction_at(const CurveData& e, std::int64_t p) {
  if (p == 2) throw std::invalid_argument("reduction_at: p = 2 is not supported");
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("reduction_at: " + std::to_string(p) + " is not an odd prime");
  }
  int od = valuation(e.delta, p);
  int oc4 = ord_or_infinite(e.c4, p);
  int oc6 = ord_or_infinite(e.c6, p);
  // Scale by u = p while the model stays integral.
  std::int64_t c6 = e.c6;
  while (od >= 12 && oc4 >= 4 && oc6 >= 6) {
    od -= 12;
    if (oc4 != kInfiniteValuation) oc4 -= 4;
    if (oc6 != kInfiniteValuation) oc6 -= 6;
    c6 /= checked_pow(p, 6);
  }

  ReductionInfo info;
  info.p = p;
  info.ord_delta = od;
  info.ord_c4 = oc4;
  info.ord_j = oc4 == kInfiniteValuation ? kInfiniteValuation : 3 * oc4 - od;
  if (od == 0) {
    info.kind = ReductionKind::good;
  } else if (oc4 == 0) {
    info.kind = kronecker(-c6, p) == 1 ? ReductionKind::multiplicative_split
                                       : ReductionKind::multiplicative_nonsplit;
  } else {
    info.kind = ReductionKind::additive;
  }
  return info;
}

std::vector<std::string> validate_conductor(const CurveData& e) {
  std::vector<std::string> issues;
  if (e.conductor < 1) {
    issues.push_back("conductor must be positive");
    return issues;
  }
  if (e.conductor % 2 == 0) issues.push_back("conductor is even");
  std::vector<std::int64_t> primes = odd_prime_divisors(e.conductor);
  for (std::int64_t p : odd_prime_divisors(e.delta)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (std::int64_t p : primes) {
    const ReductionInfo info = reduction_at(e, p);
    const int exponent = valuation(e.conductor, p);
    const std::string tag = "p = " + std::to_string(p) + ": ";
    if (info.kind == ReductionKind::good) {
      if (exponent > 0) issues.push_back(tag + "good reduction but p divides the conductor");
    } else if (exponent == 0) {
      issues.push_back(tag + "bad reduction but p does not divide the conductor");
    } else if (info.is_multiplicative() && exponent != 1) {
      issues.push_back(tag + "multiplicative reduction needs conductor exponent 1");
    } else if (info.kind == ReductionKind::additive && p >= 5 && exponent != 2) {
      issues.push_back(tag + "additive reduction needs conductor exponent 2");
    } else if (info.kind == ReductionKind::additive && p == 3 && (exponent < 2 || exponent > 5)) {
      issues.push_back(tag + "additive reduction at 3 needs conductor exponent in [2, 5]");
    }
  }
  return issues;
}

FreySets frey_sets(const CurveData& e) {
  require_odd_conductor(e);
  if (e.ell < 3) throw std::invalid_argument("frey_sets: ell must be an odd prime");
  FreySets sets;
  for (std::int64_t p : odd_prime_divisors(e.conductor)) {
    const ReductionInfo info = reduction_at(e, p);
    if (p % e.ell == e.ell - 1 && info.ord_delta % e.ell != 0) sets.s_tilde.push_back(p);
    const bool plus = info.ord_j < 0 && !info.is_tate();
    if (plus) {
      sets.t_plus.push_back(p);
    } else if (p % 4 == 3) {
      sets.t_minus.push_back(p);
    }
  }
  return sets;
}

LocalConditions twist_conditions(const CurveData& e) {
  require_odd_conductor(e);
  LocalConditions sigma;
  sigma.ell = e.ell;
  for (std::int64_t p : odd_prime_divisors(e.conductor)) {
    const ReductionInfo info = reduction_at(e, p);
    if (info.ord_j < 0 && !info.is_tate()) {
      sigma.split.push_back(p);
    } else {
      sigma.inert.push_back(p);
    }
  }
  return sigma;
}

std::int64_t squarefree_part_of_discriminant(std::int64_t d) {
  return floor_mod(d, 4) == 0 ? d / 4 : d;
}

FreyCheck frey_condition(const CurveData& e, std::int64_t d) {
  require_odd_conductor(e);
  if (d >= 0 || moebius(-d) == 0) {
    throw std::invalid_argument("frey_condition: d must be negative and squarefree");
  }
  if (std::gcd(d, checked_mul(e.ell, e.conductor)) != 1) {
    throw std::invalid_argument("frey_condition: d must be coprime to ell N");
  }
  FreyCheck check;
  check.d = d;
  check.parity_applies = e.conductor % 2 == 0;
  if (check.parity_applies) check.parity_ok = floor_mod(d, 4) == 3;

  const ReductionInfo at_ell = reduction_at(e, e.ell);
  check.ell_applies = at_ell.ord_j < 0;
  check.ell_symbol = kronecker(d, e.ell);
  if (check.ell_applies) check.ell_ok = check.ell_symbol == -1;

  for (std::int64_t p : odd_prime_divisors(e.conductor)) {
    const ReductionInfo info = reduction_at(e, p);
    const int required = (info.ord_j >= 0 || info.is_tate()) ? -1 : 1;
    const int actual = kronecker(d, p);
    check.symbols.push_back({p, required, actual});
    if (actual != required && check.failing_prime == 0) check.failing_prime = p;
  }
  return check;
}

std::vector<std::string> CurveHypotheses::failures() const {
  std::vector<std::string> out;
  if (!odd_conductor) out.push_back("conductor is not odd");
  for (const auto& issue : conductor_issues) out.push_back("conductor: " + issue);
  for (std::int64_t p : sets.s_tilde) {
    out.push_back("S~_E contains " + std::to_string(p) + " (p = -1 mod ell, ell does not divide ord_p(delta))");
  }
  for (std::int64_t p : t_primes_one_mod_ell) {
    out.push_back("T+ or T- contains " + std::to_string(p) + " = 1 mod ell");
  }
  if (!ord_ell_j_nonnegative()) out.push_back("ord_ell(j) < 0");
  if (!torsion_asserted) out.push_back("torsion hypothesis not asserted");
  return out;
}

CurveHypotheses curve_hypotheses(const CurveData& e) {
  CurveHypotheses hyp;
  hyp.torsion_asserted = e.torsion_hypothesis_asserted;
  hyp.odd_conductor = e.conductor >= 1 && e.conductor % 2 == 1;
  hyp.conductor_issues = validate_conductor(e);
  if (!hyp.odd_conductor) return hyp;
  hyp.sets = frey_sets(e);
  for (const auto* set : {&hyp.sets.t_plus, &hyp.sets.t_minus}) {
    for (std::int64_t p : *set) {
      if (p % e.ell == 1) hyp.t_primes_one_mod_ell.push_back(p);
    }
  }
  hyp.ord_ell_j = reduction_at(e, e.ell).ord_j;
  return hyp;
}

RankZeroResult rank_zero_twists(const CurveData& e, std::int64_t x, const ClassNumberTable& table,
                                bool override_hypotheses) {
  if (x < 1 || x - 1 > table.max_abs()) throw std::invalid_argument("rank_zero_twists: table too short");
  if (e.ell < 3 || !is_prime(static_cast<std::uint64_t>(e.ell))) {
    throw std::invalid_argument("rank_zero_twists: ell must be an odd prime");
  }
  RankZeroResult result;
  result.hypotheses = curve_hypotheses(e);
  result.refusal_reasons = result.hypotheses.failures();
  if (!result.refusal_reasons.empty()) {
    const bool torsion_missing = !e.torsion_hypothesis_asserted;
    const bool enumerable = result.hypotheses.odd_conductor;
    if (!override_hypotheses || torsion_missing || !enumerable) {
      result.refused = true;
      return result;
    }
    result.hypotheses_overridden = true;
  }

  const std::int64_t bad = checked_mul(e.ell, e.conductor);
  for (std::int64_t abs_d = 3; abs_d < x; ++abs_d) {
    if (!table.is_fundamental(abs_d)) continue;
    const std::int64_t d = -abs_d;
    const std::int64_t sf = squarefree_part_of_discriminant(d);
    if (std::gcd(sf, bad) != 1) continue;
    FreyCheck check = frey_condition(e, sf);
    if (!check.holds()) continue;
    const std::int64_t h = table.at(abs_d);
    if (h % e.ell == 0) continue;
    if (d % 2 == 0) ++result.even_count;
    result.twists.push_back({d, h, std::move(check)});
  }
  return result;
}

RankZeroResult rank_zero_twists(const CurveData& e, std::int64_t x, const RankZeroOptions& options) {
  if (x < 1) throw std::invalid_argument("rank_zero_twists: X must be >= 1");
  if (x > options.ceiling) {
    throw std::length_error("X = " + std::to_string(x) + " exceeds ceiling " + std::to_string(options.ceiling));
  }
  const ClassNumberTable table = ClassNumberTable::build(x - 1, {options.ceiling, options.threads});
  return rank_zero_twists(e, x, table, options.override_hypotheses);
}

}  // namespace classsieve
