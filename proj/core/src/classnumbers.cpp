#include "classsieve/classnumbers.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "classsieve/arithmetic.hpp"
#include "classsieve/parallel.hpp"

namespace classsieve {

namespace {

void require_fundamental(std::int64_t d, const char* who) {
  if (d >= 0 || !is_fundamental_discriminant(d)) {
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(d) +
                                " is not a negative fundamental discriminant");
  }
}

// sum_{e | f} mu(e) (D/e) sigma1(f/e), multiplicative in f with local factor
// sigma1(p^k) - (D/p) sigma1(p^(k-1)).
std::int64_t hurwitz_divisor_sum(std::int64_t d, std::int64_t f) {
  std::int64_t total = 1;
  for (const auto& pe : factor(static_cast<std::uint64_t>(f)).factors) {
    const auto p = static_cast<std::int64_t>(pe.prime);
    std::int64_t sigma_prev = 1;  // sigma1(p^(k-1))
    std::int64_t power = 1;
    for (int i = 1; i < pe.exponent; ++i) {
      power = checked_mul(power, p);
      sigma_prev = checked_add(sigma_prev, power);
    }
    const std::int64_t sigma_k = checked_add(sigma_prev, checked_mul(power, p));
    total = checked_mul(total, sigma_k - kronecker(d, p) * sigma_prev);
  }
  return total;
}

std::vector<std::uint8_t> fundamental_flags(std::int64_t max_abs) {
  const auto size = static_cast<std::size_t>(max_abs) + 1;
  std::vector<std::uint8_t> squarefree(size, 1);
  for (std::int64_t p = 2; p * p <= max_abs; ++p) {
    for (std::int64_t j = p * p; j <= max_abs; j += p * p) squarefree[j] = 0;
  }
  std::vector<std::uint8_t> flags(size, 0);
  for (std::int64_t n = 3; n <= max_abs; ++n) {
    if (n % 4 == 3) {
      flags[n] = squarefree[n];
    } else if (n % 4 == 0) {
      const std::int64_t m = n / 4;
      flags[n] = (m % 4 == 1 || m % 4 == 2) ? squarefree[m] : 0;
    }
  }
  return flags;
}

}  // namespace

std::vector<ReducedForm> reduced_forms(std::int64_t d, bool primitive_only) {
  if (d >= 0) throw std::invalid_argument("reduced_forms: discriminant must be negative");
  const std::int64_t r = floor_mod(d, 4);
  if (r != 0 && r != 1) throw std::invalid_argument("reduced_forms: discriminant must be 0 or 1 mod 4");
  std::vector<ReducedForm> forms;
  const std::int64_t n = -d;
  for (std::int64_t a = 1; 3 * a * a <= n; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b + n;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (primitive_only && std::gcd(std::gcd(a, b), c) != 1) continue;
      forms.push_back({a, b, c});
    }
  }
  return forms;
}

std::int64_t class_number(std::int64_t d) {
  require_fundamental(d, "class_number");
  // D fundamental: every form of discriminant D is primitive.
  return static_cast<std::int64_t>(reduced_forms(d, false).size());
}

int unit_count_half(std::int64_t d) {
  require_fundamental(d, "unit_count_half");
  if (d == -3) return 3;
  if (d == -4) return 2;
  return 1;
}

std::int64_t hurwitz_scaled(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("hurwitz: n must be >= 0");
  if (n == 0) return -1;
  if (n % 4 == 1 || n % 4 == 2) return 0;
  const std::int64_t d = fundamental_discriminant_of(n);
  const auto f = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(n / -d)));
  return checked_mul(checked_mul(12 / unit_count_half(d), class_number(d)),
                     hurwitz_divisor_sum(d, f));
}

Rational hurwitz(std::int64_t n) { return Rational(hurwitz_scaled(n), 12); }

ClassNumberTable ClassNumberTable::build(std::int64_t max_abs, const TableOptions& options) {
  if (max_abs < 0) throw std::invalid_argument("class number table: bound must be >= 0");
  if (max_abs > options.ceiling) {
    throw std::length_error("class number table bound " + std::to_string(max_abs) +
                            " exceeds ceiling " + std::to_string(options.ceiling));
  }
  ClassNumberTable table;
  table.max_abs_ = max_abs;
  table.fundamental_ = fundamental_flags(max_abs);
  const auto size = static_cast<std::size_t>(max_abs) + 1;

  const unsigned threads = std::max(1u, options.threads);
  std::vector<std::vector<std::uint32_t>> partial(threads);
  const std::uint8_t* fundamental = table.fundamental_.data();
  std::int64_t a_max = 0;
  while (3 * (a_max + 1) * (a_max + 1) <= max_abs) ++a_max;

  // Each a contributes about max_abs/4 inner iterations, so fixed-size chunks
  // balance well.
  parallel_chunks(1, a_max + 1, 4, threads, [&](unsigned worker, std::int64_t lo, std::int64_t hi) {
    auto& counts = partial[worker];
    if (counts.empty()) counts.assign(size, 0);
    for (std::int64_t a = lo; a < hi; ++a) {
      const std::int64_t step = 4 * a;
      for (std::int64_t b = 0; b <= a; ++b) {
        std::int64_t n = 4 * a * a - b * b;
        for (std::int64_t c = a; n <= max_abs; ++c, n += step) {
          if (!fundamental[n]) continue;
          counts[n] += (b == 0 || b == a || c == a) ? 1 : 2;
        }
      }
    }
  });

  table.counts_.assign(size, 0);
  for (const auto& counts : partial) {
    if (counts.empty()) continue;
    for (std::size_t i = 0; i < size; ++i) table.counts_[i] += counts[i];
  }
  return table;
}

HurwitzTable hurwitz_table(const ClassNumberTable& class_numbers) {
  const std::int64_t max_n = class_numbers.max_abs();
  std::vector<std::int64_t> values(static_cast<std::size_t>(max_n) + 1, 0);
  values[0] = -1;
  for (std::int64_t abs_d = 3; abs_d <= max_n; ++abs_d) {
    if (!class_numbers.is_fundamental(abs_d)) continue;
    const std::int64_t d = -abs_d;
    const std::int64_t w = abs_d == 3 ? 3 : (abs_d == 4 ? 2 : 1);
    const std::int64_t scaled_h = (12 / w) * class_numbers.at(abs_d);
    for (std::int64_t f = 1; abs_d * f * f <= max_n; ++f) {
      values[abs_d * f * f] = checked_mul(scaled_h, hurwitz_divisor_sum(d, f));
    }
  }
  return HurwitzTable(max_n, std::move(values));
}

HurwitzTable hurwitz_table(std::int64_t max_n, const TableOptions& options) {
  if (max_n < 0) throw std::invalid_argument("hurwitz_table: max_n must be >= 0");
  return hurwitz_table(ClassNumberTable::build(max_n, options));
}

void HurwitzTable::write_csv(std::ostream& os) const {
  os << "n,twelve_H\n";
  for (std::int64_t n = 0; n <= max_n_; ++n) os << n << ',' << values_[n] << '\n';
}

}  // namespace classsieve
