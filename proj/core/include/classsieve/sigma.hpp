#pragma once

// Local-condition predicates, discriminant search and density counts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "classsieve/classnumbers.hpp"
#include "classsieve/levels.hpp"
#include "classsieve/local_conditions.hpp"

namespace classsieve {

inline constexpr std::int64_t kDefaultSearchCeiling = 10'000'000;

/// -n = 0, 1 mod 4; q^2 does not divide n for q in any set; and the field
/// Q(sqrt(-n)) ramifies on S0, splits on S+ and is inert on S-.
bool in_A_sigma(std::int64_t n, const LocalConditions& sigma);

/// Splitting behaviour of Q(sqrt(d)) only, via (d/q).
bool meets_local_conditions(std::int64_t d, const LocalConditions& sigma);

/// Local conditions plus ell not dividing h(d). d must be fundamental.
bool in_T_sigma(std::int64_t d, const LocalConditions& sigma);
bool in_T_sigma(std::int64_t d, const LocalConditions& sigma, const ClassNumberTable& table);

/// Conditions on an auxiliary prime p:
///   (1) (p/ell) = 1 and p != 1 mod ell,
///   (2) p = 1 mod 8,
///   (3) (p/q) = 1 for odd primes q <= q_ceiling, q != ell.
struct PrimeConditionReport {
  std::int64_t p = 0;
  std::int64_t q_ceiling = 0;
  bool residue_mod_ell = false;
  bool one_mod_eight = false;
  bool residue_mod_small_primes = false;
  std::optional<std::int64_t> first_failing_q;

  bool holds() const { return residue_mod_ell && one_mod_eight && residue_mod_small_primes; }
};

PrimeConditionReport prime_conditions(std::int64_t p, const LocalConditions& sigma,
                                      std::int64_t q_ceiling);

/// Least prime >= `from` satisfying all three prime conditions, or empty if
/// none is found below `limit`.
std::optional<std::int64_t> least_prime_meeting_conditions(const LocalConditions& sigma,
                                                           std::int64_t q_ceiling,
                                                           std::int64_t limit,
                                                           std::int64_t from = 2);

struct SearchOptions {
  std::int64_t ceiling = kDefaultSearchCeiling;
  unsigned threads = 1;
  /// Also return discriminants meeting the local conditions with ell | h(D).
  bool include_divisible = false;
};

struct DiscriminantHit {
  std::int64_t d;
  std::int64_t h;
  bool ell_divides;

  friend bool operator==(const DiscriminantHit&, const DiscriminantHit&) = default;
};

/// Fundamental -X < D < 0 in T_{Sigma,ell}, ordered by |D|. The options
/// overload validates Sigma; the table overload takes Sigma as given.
std::vector<DiscriminantHit> search_discriminants(const LocalConditions& sigma, std::int64_t x,
                                                  const SearchOptions& options = {});
std::vector<DiscriminantHit> search_discriminants(const LocalConditions& sigma, std::int64_t x,
                                                  const ClassNumberTable& table,
                                                  bool include_divisible = false);

/// Lower-bound constant (ell-2) / ((ell-1) 2^(r+4) sqrt(M)), kept symbolic.
struct CorollaryConstant {
  std::int64_t numerator = 0;         // ell - 2
  std::int64_t denominator = 1;       // ell - 1
  std::optional<std::int64_t> two_exponent;  // r_Sigma + 4
  std::optional<Rational> m_sigma;
  std::optional<double> log10_value;  // needs r_Sigma
};

struct DensityReport {
  std::int64_t x = 0;
  std::int64_t ell = 0;
  std::int64_t total_fundamental = 0;
  std::int64_t indivisible_count = 0;
  std::optional<std::int64_t> in_T_sigma_count;
  double proportion = 0;
  double cl_prediction = 0;
  CorollaryConstant corollary_constant;
};

/// prod_{n >= 1} (1 - ell^-n), stopping once ell^-n < 1e-15.
double cohen_lenstra_prediction(std::int64_t ell);

CorollaryConstant corollary_constant(const LocalConditions& sigma, const BoundOptions& options = {});

DensityReport density_report(const std::optional<LocalConditions>& sigma, std::int64_t ell,
                             std::int64_t x, const SearchOptions& options = {});
DensityReport density_report(const std::optional<LocalConditions>& sigma, std::int64_t ell,
                             std::int64_t x, const ClassNumberTable& table);

/// Smallest n with ell not dividing the coefficient a(np) - p a(n/p) of the
/// form F built from H^Sigma, located by direct evaluation of H(m) on A_Sigma
/// (effective conditions). n = f^2 k with k squarefree; the produced field is
/// Q(sqrt(-k p)).
struct KpWitness {
  std::int64_t p = 0;
  std::int64_t n_p = 0;
  std::int64_t f_p = 0;
  std::int64_t k_p = 0;
  std::int64_t discriminant = 0;
  std::int64_t class_number = 0;
};

std::optional<KpWitness> find_k_p(const LocalConditions& sigma, std::int64_t p, std::int64_t n_limit);

/// Class numbers of Q(sqrt(-p)) for primes p below a bound.
struct SmallPrimeRow {
  std::int64_t p;
  std::int64_t d;
  std::int64_t h;
  bool ell_divides;
  int symbol_at_split_prime;  // (D/q)
};

struct SmallPrimeReading {
  std::string label;
  std::vector<std::int64_t> excluded;
  std::int64_t fields = 0;
  std::int64_t split = 0;
};

struct SmallPrimeSurvey {
  std::int64_t ell = 5;
  std::int64_t bound = 100;
  std::int64_t split_prime = 3;
  std::vector<SmallPrimeRow> rows;
  std::vector<std::int64_t> exceptional;  // p with ell | h
  std::vector<SmallPrimeReading> readings;
};

/// Readings exclude, in turn, nothing; {2}; {2,3}; {2,3,ell} from the
/// ell-indivisible primes before counting fields split at split_prime.
SmallPrimeSurvey small_prime_survey(std::int64_t ell = 5, std::int64_t bound = 100,
                                    std::int64_t split_prime = 3);

}  // namespace classsieve
