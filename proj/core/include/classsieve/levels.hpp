#pragma once

// Levels, Gamma_0 indices and Sturm bounds for the sieved forms.

#include <cstdint>
#include <limits>
#include <optional>

#include "classsieve/local_conditions.hpp"
#include "classsieve/rational.hpp"

namespace classsieve {

/// [Gamma_0(1) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p).
std::int64_t gamma0_index(std::int64_t n);

/// 1 when S- is nonempty; otherwise the least odd prime q outside all three
/// sets, q != ell, that is not simultaneously 1 mod ell and 3 mod 4.
std::int64_t q_sigma(const LocalConditions& sigma);

/// Sigma with S- replaced by {Q_Sigma} when S- is empty.
LocalConditions effective_conditions(const LocalConditions& sigma);

struct BoundOptions {
  std::int64_t m_ceiling = std::numeric_limits<std::int64_t>::max() / 1000;
  /// r_Sigma needs pi(M_Sigma); skipped (left empty) above this.
  std::int64_t prime_count_ceiling = 2'000'000'000;
};

/// Exact fields are empty when the value does not fit in 64 bits (or, for
/// r_sigma, when M_Sigma exceeds the prime-count ceiling). The log10 fields
/// are always filled.
struct BoundReport {
  std::int64_t q_sigma = 1;
  std::optional<std::int64_t> n_sigma;
  std::optional<std::int64_t> index;
  std::optional<Rational> m_sigma;
  std::optional<std::int64_t> r_sigma;
  bool astronomical = false;
  double log10_n_sigma = 0;
  double log10_index = 0;
  double log10_m_sigma = 0;
};

BoundReport bound_report(const LocalConditions& sigma, const BoundOptions& options = {});

/// (k/12) [Gamma_0(1) : Gamma_0(N)] with k = weight_times_two / 2.
Rational sturm_bound(int weight_times_two, std::int64_t level);

}  // namespace classsieve
