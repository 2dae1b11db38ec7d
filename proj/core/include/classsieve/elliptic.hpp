#pragma once

// Weierstrass invariants, reduction types at odd primes, and the twist
// criterion linking trivial ell-Selmer groups of E_D to ell not dividing h(D).

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "classsieve/classnumbers.hpp"
#include "classsieve/local_conditions.hpp"

namespace classsieve {

inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

struct WeierstrassCoefficients {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with its standard derived
/// quantities. 1728 delta = c4^3 - c6^2 and delta != 0.
struct CurveData {
  WeierstrassCoefficients a;
  std::int64_t b2 = 0, b4 = 0, b6 = 0, b8 = 0;
  std::int64_t c4 = 0, c6 = 0;
  std::int64_t delta = 0;
  std::int64_t j_num = 0;  // j = j_num / j_den in lowest terms, j_den > 0
  std::int64_t j_den = 1;
  std::int64_t conductor = 0;  // supplied by the caller; 0 when unknown
  std::int64_t ell = 0;        // order of the rational torsion point
  bool torsion_hypothesis_asserted = false;
};

/// Throws std::domain_error for a singular model, std::overflow_error when an
/// invariant leaves 64 bits.
CurveData derive_invariants(const WeierstrassCoefficients& a);

/// derive_invariants plus the caller-supplied arithmetic data.
CurveData make_curve(const WeierstrassCoefficients& a, std::int64_t conductor, std::int64_t ell,
                     bool torsion_hypothesis_asserted);

/// Model y^2 = x^3 - 27 c4 D^2 x - 54 c6 D^3 of the quadratic twist by D.
CurveData quadratic_twist(const CurveData& e, std::int64_t d);

enum class ReductionKind { good, multiplicative_split, multiplicative_nonsplit, additive };

std::string to_string(ReductionKind kind);

/// Valuations are taken on a model made minimal at p. ord_c4 and ord_j are
/// kInfiniteValuation when c4 = 0.
struct ReductionInfo {
  std::int64_t p = 0;
  int ord_delta = 0;
  int ord_c4 = 0;
  int ord_j = 0;
  ReductionKind kind = ReductionKind::good;

  bool is_multiplicative() const {
    return kind == ReductionKind::multiplicative_split || kind == ReductionKind::multiplicative_nonsplit;
  }
  /// Split multiplicative reduction, i.e. E/Q_p is a Tate curve.
  bool is_tate() const { return kind == ReductionKind::multiplicative_split; }
};

/// p odd prime; split versus nonsplit by whether -c6 is a square mod p.
ReductionInfo reduction_at(const CurveData& e, std::int64_t p);

/// Problems with the supplied conductor: parity, prime support against the
/// bad primes, and exponents 1 (multiplicative) / 2 (additive, p >= 5).
std::vector<std::string> validate_conductor(const CurveData& e);

struct FreySets {
  std::vector<std::int64_t> s_tilde;  // p | N, p = -1 mod ell, ell does not divide ord_p(delta)
  std::vector<std::int64_t> t_plus;   // p | N, ord_p(j) < 0, not a Tate curve
  std::vector<std::int64_t> t_minus;  // p | N, p not in t_plus, p = 3 mod 4
};

/// Throws std::invalid_argument for an even or missing conductor.
FreySets frey_sets(const CurveData& e);

/// Sigma used for the twist count: S+ = t_plus, S- = the other odd p | N, S0 empty.
LocalConditions twist_conditions(const CurveData& e);

struct PrimeSymbol {
  std::int64_t p;
  int required;
  int actual;
};

struct FreyCheck {
  std::int64_t d = 0;  // squarefree integer the symbols were evaluated at
  bool parity_applies = false;
  bool parity_ok = true;
  bool ell_applies = false;
  bool ell_ok = true;
  int ell_symbol = 0;
  std::vector<PrimeSymbol> symbols;
  std::int64_t failing_prime = 0;  // 0 when all odd-prime symbols match

  bool holds() const { return parity_ok && ell_ok && failing_prime == 0; }
};

/// Conditions on a negative squarefree d coprime to ell N:
///   (1) d = 3 mod 4 when 2 | N;
///   (2) (d/ell) = -1 when ord_ell(j) < 0;
///   (3) for odd p | N, (d/p) = -1 if ord_p(j) >= 0 or E/Q_p is a Tate curve,
///       and +1 otherwise.
FreyCheck frey_condition(const CurveData& e, std::int64_t d);

struct CurveHypotheses {
  bool odd_conductor = false;
  std::vector<std::string> conductor_issues;
  FreySets sets;
  std::vector<std::int64_t> t_primes_one_mod_ell;
  int ord_ell_j = 0;
  bool torsion_asserted = false;

  bool ord_ell_j_nonnegative() const { return ord_ell_j >= 0; }
  std::vector<std::string> failures() const;
  bool all_hold() const { return failures().empty(); }
};

CurveHypotheses curve_hypotheses(const CurveData& e);

struct TwistCertificate {
  std::int64_t d;  // fundamental discriminant
  std::int64_t h;
  FreyCheck frey;
};

struct RankZeroOptions {
  std::int64_t ceiling = kDefaultTableCeiling;
  unsigned threads = 1;
  /// Enumerate even when computed hypotheses fail; the torsion assertion is
  /// still required.
  bool override_hypotheses = false;
};

struct RankZeroResult {
  CurveHypotheses hypotheses;
  bool refused = false;
  bool hypotheses_overridden = false;
  std::vector<std::string> refusal_reasons;
  std::vector<TwistCertificate> twists;
  std::int64_t even_count = 0;
};

/// Fundamental -X < D < 0 whose squarefree part d is coprime to ell N,
/// satisfies frey_condition, and has ell not dividing h(D).
RankZeroResult rank_zero_twists(const CurveData& e, std::int64_t x, const RankZeroOptions& options = {});
RankZeroResult rank_zero_twists(const CurveData& e, std::int64_t x, const ClassNumberTable& table,
                                bool override_hypotheses = false);

/// Squarefree part of a fundamental discriminant: D or D/4.
std::int64_t squarefree_part_of_discriminant(std::int64_t d);

}  // namespace classsieve
