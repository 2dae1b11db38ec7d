#include "classsieve/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "classsieve/arithmetic.hpp"

namespace classsieve {

namespace {

void require_ell(std::int64_t ell) {
  if (ell < 3 || !is_prime(static_cast<std::uint64_t>(ell))) {
    throw std::invalid_argument("ell must be an odd prime");
  }
}

void require_bound(std::int64_t x, std::int64_t ceiling) {
  if (x < 1) throw std::invalid_argument("X must be >= 1");
  if (x > ceiling) {
    throw std::length_error("X = " + std::to_string(x) + " exceeds ceiling " + std::to_string(ceiling));
  }
}

ClassNumberTable table_below(std::int64_t x, const SearchOptions& options) {
  require_bound(x, options.ceiling);
  return ClassNumberTable::build(x - 1, {options.ceiling, options.threads});
}

}  // namespace

bool meets_local_conditions(std::int64_t d, const LocalConditions& sigma) {
  for (std::int64_t q : sigma.ramified) {
    if (kronecker(d, q) != 0) return false;
  }
  for (std::int64_t q : sigma.split) {
    if (kronecker(d, q) != 1) return false;
  }
  for (std::int64_t q : sigma.inert) {
    if (kronecker(d, q) != -1) return false;
  }
  return true;
}

bool in_A_sigma(std::int64_t n, const LocalConditions& sigma) {
  if (n < 1) throw std::invalid_argument("in_A_sigma: n must be >= 1");
  if (n % 4 == 1 || n % 4 == 2) return false;
  for (std::int64_t q : sigma.all_primes()) {
    if (n % (q * q) == 0) return false;
  }
  return meets_local_conditions(fundamental_discriminant_of(n), sigma);
}

bool in_T_sigma(std::int64_t d, const LocalConditions& sigma) {
  if (d >= 0 || !is_fundamental_discriminant(d)) {
    throw std::invalid_argument("in_T_sigma: " + std::to_string(d) + " is not a negative fundamental discriminant");
  }
  return meets_local_conditions(d, sigma) && class_number(d) % sigma.ell != 0;
}

bool in_T_sigma(std::int64_t d, const LocalConditions& sigma, const ClassNumberTable& table) {
  const std::int64_t abs_d = -d;
  if (d >= 0 || abs_d > table.max_abs() || !table.is_fundamental(abs_d)) {
    throw std::invalid_argument("in_T_sigma: " + std::to_string(d) + " is not a tabulated fundamental discriminant");
  }
  return meets_local_conditions(d, sigma) && table.at(abs_d) % sigma.ell != 0;
}

PrimeConditionReport prime_conditions(std::int64_t p, const LocalConditions& sigma,
                                      std::int64_t q_ceiling) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("prime_conditions: " + std::to_string(p) + " is not prime");
  }
  const std::int64_t ell = sigma.ell;
  PrimeConditionReport report;
  report.p = p;
  report.q_ceiling = q_ceiling;
  report.residue_mod_ell = kronecker(p, ell) == 1 && p % ell != 1;
  report.one_mod_eight = p % 8 == 1;
  report.residue_mod_small_primes = true;
  for (std::int64_t q = 3; q <= q_ceiling; q += 2) {
    if (q == ell || !is_prime(static_cast<std::uint64_t>(q))) continue;
    if (kronecker(p, q) != 1) {
      report.residue_mod_small_primes = false;
      report.first_failing_q = q;
      break;
    }
  }
  return report;
}

std::optional<std::int64_t> least_prime_meeting_conditions(const LocalConditions& sigma,
                                                           std::int64_t q_ceiling,
                                                           std::int64_t limit,
                                                           std::int64_t from) {
  const std::int64_t ell = sigma.ell;
  std::vector<std::int64_t> qs;
  for (std::int64_t q : primes_up_to(q_ceiling)) {
    if (q != 2 && q != ell) qs.push_back(q);
  }
  std::int64_t p = std::max<std::int64_t>(from, 2);
  p += floor_mod(1 - p, 8);
  for (; p < limit; p += 8) {
    if (p % ell == 1 || kronecker(p, ell) != 1) continue;
    bool ok = true;
    for (std::int64_t q : qs) {
      if (kronecker(p, q) != 1) {
        ok = false;
        break;
      }
    }
    if (ok && is_prime(static_cast<std::uint64_t>(p))) return p;
  }
  return std::nullopt;
}

std::vector<DiscriminantHit> search_discriminants(const LocalConditions& sigma, std::int64_t x,
                                                  const ClassNumberTable& table,
                                                  bool include_divisible) {
  if (x < 1) throw std::invalid_argument("search_discriminants: X must be >= 1");
  if (x - 1 > table.max_abs()) throw std::invalid_argument("search_discriminants: table too short");
  std::vector<DiscriminantHit> hits;
  for (std::int64_t abs_d = 3; abs_d < x; ++abs_d) {
    if (!table.is_fundamental(abs_d)) continue;
    const std::int64_t d = -abs_d;
    if (!meets_local_conditions(d, sigma)) continue;
    const std::int64_t h = table.at(abs_d);
    const bool divides = h % sigma.ell == 0;
    if (!divides || include_divisible) hits.push_back({d, h, divides});
  }
  return hits;
}

std::vector<DiscriminantHit> search_discriminants(const LocalConditions& sigma, std::int64_t x,
                                                  const SearchOptions& options) {
  require_valid(sigma);
  return search_discriminants(sigma, x, table_below(x, options), options.include_divisible);
}

double cohen_lenstra_prediction(std::int64_t ell) {
  require_ell(ell);
  double product = 1.0;
  double term = 1.0;
  for (;;) {
    term /= static_cast<double>(ell);
    if (term < 1e-15) break;
    product *= 1.0 - term;
  }
  return product;
}

CorollaryConstant corollary_constant(const LocalConditions& sigma, const BoundOptions& options) {
  const BoundReport bounds = bound_report(sigma, options);
  CorollaryConstant c;
  c.numerator = sigma.ell - 2;
  c.denominator = sigma.ell - 1;
  c.m_sigma = bounds.m_sigma;
  if (bounds.r_sigma) {
    c.two_exponent = *bounds.r_sigma + 4;
    c.log10_value = std::log10(static_cast<double>(c.numerator) / static_cast<double>(c.denominator)) -
                    static_cast<double>(*c.two_exponent) * std::log10(2.0) - 0.5 * bounds.log10_m_sigma;
  }
  return c;
}

DensityReport density_report(const std::optional<LocalConditions>& sigma, std::int64_t ell,
                             std::int64_t x, const ClassNumberTable& table) {
  require_ell(ell);
  if (x < 1 || x - 1 > table.max_abs()) throw std::invalid_argument("density_report: table too short");
  std::optional<LocalConditions> conditions = sigma;
  if (conditions) {
    conditions->ell = ell;
    require_valid(*conditions, /*allow_ell_three=*/true);
  }
  DensityReport report;
  report.x = x;
  report.ell = ell;
  std::int64_t in_t = 0;
  for (std::int64_t abs_d = 3; abs_d < x; ++abs_d) {
    if (!table.is_fundamental(abs_d)) continue;
    ++report.total_fundamental;
    if (table.at(abs_d) % ell == 0) continue;
    ++report.indivisible_count;
    if (conditions && meets_local_conditions(-abs_d, *conditions)) ++in_t;
  }
  if (conditions) report.in_T_sigma_count = in_t;
  report.proportion = report.total_fundamental == 0
                          ? 0.0
                          : static_cast<double>(report.indivisible_count) /
                                static_cast<double>(report.total_fundamental);
  report.cl_prediction = cohen_lenstra_prediction(ell);
  LocalConditions for_constant = conditions.value_or(LocalConditions{ell, {}, {}, {}});
  report.corollary_constant = corollary_constant(for_constant);
  return report;
}

DensityReport density_report(const std::optional<LocalConditions>& sigma, std::int64_t ell,
                             std::int64_t x, const SearchOptions& options) {
  return density_report(sigma, ell, x, table_below(x, options));
}

std::optional<KpWitness> find_k_p(const LocalConditions& sigma, std::int64_t p, std::int64_t n_limit) {
  require_valid(sigma);
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("find_k_p: " + std::to_string(p) + " is not prime");
  }
  const LocalConditions eff = effective_conditions(sigma);
  auto scaled_a = [&](std::int64_t m) -> std::int64_t {
    return in_A_sigma(m, eff) ? hurwitz_scaled(m) : 0;
  };
  for (std::int64_t n = 1; n <= n_limit; ++n) {
    std::int64_t c = scaled_a(checked_mul(n, p));
    if (n % p == 0) c = checked_add(c, -checked_mul(p, scaled_a(n / p)));
    if (floor_mod(c, sigma.ell) == 0) continue;
    KpWitness w;
    w.p = p;
    w.n_p = n;
    const SquarefreeParts parts = squarefree_decompose(n);
    w.f_p = parts.square_root;
    w.k_p = parts.squarefree;
    w.discriminant = fundamental_discriminant_of(checked_mul(w.k_p, p));
    w.class_number = class_number(w.discriminant);
    return w;
  }
  return std::nullopt;
}

SmallPrimeSurvey small_prime_survey(std::int64_t ell, std::int64_t bound, std::int64_t split_prime) {
  require_ell(ell);
  SmallPrimeSurvey survey;
  survey.ell = ell;
  survey.bound = bound;
  survey.split_prime = split_prime;
  for (std::int64_t p : primes_up_to(bound - 1)) {
    const std::int64_t d = fundamental_discriminant_of(p);
    const std::int64_t h = class_number(d);
    survey.rows.push_back({p, d, h, h % ell == 0, kronecker(d, split_prime)});
    if (h % ell == 0) survey.exceptional.push_back(p);
  }
  const std::vector<std::pair<std::string, std::vector<std::int64_t>>> readings = {
      {"all primes", {}},
      {"excluding 2", {2}},
      {"excluding 2 and " + std::to_string(split_prime), {2, split_prime}},
      {"excluding 2, " + std::to_string(split_prime) + " and ell", {2, split_prime, ell}},
  };
  for (const auto& [label, excluded] : readings) {
    SmallPrimeReading reading{label, excluded, 0, 0};
    for (const auto& row : survey.rows) {
      if (row.ell_divides) continue;
      if (std::find(excluded.begin(), excluded.end(), row.p) != excluded.end()) continue;
      ++reading.fields;
      if (row.symbol_at_split_prime == 1) ++reading.split;
    }
    survey.readings.push_back(std::move(reading));
  }
  return survey;
}

}  // namespace classsieve
