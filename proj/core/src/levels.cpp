#include "classsieve/levels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "classsieve/arithmetic.hpp"

namespace classsieve {

namespace {

using u128 = unsigned __int128;

constexpr u128 kI64Max = static_cast<u128>(std::numeric_limits<std::int64_t>::max());

bool mul_u128(u128 a, u128 b, u128& out) {
  if (a != 0 && b > static_cast<u128>(-1) / a) return false;
  out = a * b;
  return true;
}

bool contains(const std::vector<std::int64_t>& v, std::int64_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::int64_t gamma0_index(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("gamma0_index: N must be >= 1");
  std::int64_t index = 1;
  for (const auto& pe : factor(static_cast<std::uint64_t>(n)).factors) {
    const auto p = static_cast<std::int64_t>(pe.prime);
    index = checked_mul(index, checked_mul(checked_pow(p, static_cast<unsigned>(pe.exponent - 1)), p + 1));
  }
  return index;
}

std::int64_t q_sigma(const LocalConditions& sigma) {
  if (!sigma.inert.empty()) return 1;
  const auto used = sigma.all_primes();
  for (std::int64_t q = 3;; q += 2) {
    if (!is_prime(static_cast<std::uint64_t>(q)) || q == sigma.ell || contains(used, q)) continue;
    if (q % sigma.ell == 1 && q % 4 == 3) continue;
    return q;
  }
}

LocalConditions effective_conditions(const LocalConditions& sigma) {
  LocalConditions out = sigma;
  if (out.inert.empty()) out.inert.push_back(q_sigma(sigma));
  return out;
}

BoundReport bound_report(const LocalConditions& sigma, const BoundOptions& options) {
  BoundReport report;
  report.q_sigma = q_sigma(sigma);

  // Prime support of N_Sigma with exponents: 2^2 * Q^6 * prod q^6.
  std::map<std::int64_t, int> exponents{{2, 2}};
  if (report.q_sigma > 1) exponents[report.q_sigma] += 6;
  for (std::int64_t q : sigma.all_primes()) exponents[q] += 6;

  double log_n = 0, log_index = 0;
  u128 n = 1, index = 1;
  bool exact = true;
  for (const auto& [p, e] : exponents) {
    log_n += e * std::log10(static_cast<double>(p));
    log_index += e * std::log10(static_cast<double>(p)) + std::log10(1.0 + 1.0 / static_cast<double>(p));
    for (int i = 0; i < e && exact; ++i) exact = mul_u128(n, static_cast<u128>(p), n);
    for (int i = 0; i < e - 1 && exact; ++i) exact = mul_u128(index, static_cast<u128>(p), index);
    if (exact) exact = mul_u128(index, static_cast<u128>(p + 1), index);
  }
  report.log10_n_sigma = log_n;
  report.log10_index = log_index;
  report.log10_m_sigma = log_index - std::log10(8.0);

  if (exact && n <= kI64Max) report.n_sigma = static_cast<std::int64_t>(n);
  if (exact && index <= kI64Max) {
    report.index = static_cast<std::int64_t>(index);
    report.m_sigma = Rational(*report.index, 8);
  }
  const bool m_fits = report.m_sigma && report.m_sigma->num() / report.m_sigma->den() <= options.m_ceiling;
  report.astronomical = !report.n_sigma || !m_fits;

  if (m_fits) {
    const Rational& m = *report.m_sigma;
    const std::int64_t ceil_m = (m.num() + m.den() - 1) / m.den();
    if (ceil_m <= options.prime_count_ceiling) {
      std::int64_t count = prime_count_below(ceil_m);
      if (ceil_m > 2) --count;  // the prime 2
      if (Rational(sigma.ell) < m) --count;
      report.r_sigma = count;
    }
  }
  return report;
}

Rational sturm_bound(int weight_times_two, std::int64_t level) {
  if (weight_times_two < 1) throw std::invalid_argument("sturm_bound: weight must be positive");
  return Rational(checked_mul(weight_times_two, gamma0_index(level)), 24);
}

}  // namespace classsieve
