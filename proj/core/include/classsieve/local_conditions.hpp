#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace classsieve {

/// Prescribed local behaviour of Q(sqrt(D)) at finitely many odd primes,
/// together with the prime ell whose divisibility of h(D) is excluded.
struct LocalConditions {
  std::int64_t ell = 5;
  std::vector<std::int64_t> ramified;  // S0
  std::vector<std::int64_t> split;     // S+
  std::vector<std::int64_t> inert;     // S-

  /// Sorts each set; does not validate.
  LocalConditions normalized() const;
  std::vector<std::int64_t> all_primes() const;

  friend bool operator==(const LocalConditions&, const LocalConditions&) = default;
};

struct Violation {
  enum class Kind {
    ell_not_prime,
    ell_below_five,
    not_odd_prime,
    duplicate,
    overlap,
    contains_ell,
    ramified_one_mod_ell,        // hypothesis (1)
    split_minus_one_mod_ell,     // hypothesis (2)
    inert_one_mod_ell_three_mod_four,  // hypothesis (3)
  };
  Kind kind;
  std::int64_t prime;
  std::string message;
};

std::string to_string(Violation::Kind kind);

/// Every violated hypothesis, with the offending prime. ell = 3 is reported
/// as ell_below_five; callers that only count densities may ignore it.
std::vector<Violation> validate(const LocalConditions& sigma);

/// Throws std::invalid_argument listing all violations (ell = 3 tolerated
/// when allow_ell_three).
void require_valid(const LocalConditions& sigma, bool allow_ell_three = false);

/// Parses "3,7,11" (empty string gives an empty set).
std::vector<std::int64_t> parse_prime_list(const std::string& text);

}  // namespace classsieve
