#pragma once

// Class numbers h(D), unit counts w(D) and Hurwitz class numbers H(n).
//
// Hurwitz class numbers are carried as the integer 12*H(n): w(D) is 1, 2 or 3,
// so 12 clears every denominator.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "classsieve/rational.hpp"

namespace classsieve {

inline constexpr std::int64_t kDefaultTableCeiling = 10'000'000;

/// Binary quadratic form a x^2 + b xy + c y^2.
struct ReducedForm {
  std::int64_t a;
  std::int64_t b;
  std::int64_t c;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }

  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

/// Reduced positive definite forms of discriminant d < 0 (|b| <= a <= c,
/// b >= 0 when |b| = a or a = c), in lexicographic (a, b) order.
std::vector<ReducedForm> reduced_forms(std::int64_t d, bool primitive_only = true);

/// Throws std::invalid_argument unless d is a negative fundamental discriminant.
std::int64_t class_number(std::int64_t d);

/// Half the number of units of the ring of integers: 3 for -3, 2 for -4, else 1.
int unit_count_half(std::int64_t d);

/// 12 * H(n); -1 at n = 0.
std::int64_t hurwitz_scaled(std::int64_t n);
Rational hurwitz(std::int64_t n);

struct TableOptions {
  std::int64_t ceiling = kDefaultTableCeiling;
  unsigned threads = 1;
};

/// h(D) for every negative fundamental discriminant with |D| <= max_abs,
/// built by one sweep over all reduced forms.
class ClassNumberTable {
 public:
  static ClassNumberTable build(std::int64_t max_abs, const TableOptions& options = {});

  std::int64_t max_abs() const { return max_abs_; }
  bool is_fundamental(std::int64_t abs_d) const { return fundamental_[abs_d] != 0; }
  /// h(-abs_d); 0 when -abs_d is not a fundamental discriminant.
  std::int64_t at(std::int64_t abs_d) const { return counts_[abs_d]; }

 private:
  std::int64_t max_abs_ = 0;
  std::vector<std::uint8_t> fundamental_;
  std::vector<std::uint32_t> counts_;
};

class HurwitzTable {
 public:
  HurwitzTable(std::int64_t max_n, std::vector<std::int64_t> twelve_h)
      : max_n_(max_n), values_(std::move(twelve_h)) {}

  std::int64_t max_n() const { return max_n_; }
  std::int64_t operator[](std::int64_t n) const { return values_[n]; }
  const std::vector<std::int64_t>& values() const { return values_; }

  /// `n,twelve_H` header then one row per n.
  void write_csv(std::ostream& os) const;

 private:
  std::int64_t max_n_;
  std::vector<std::int64_t> values_;
};

/// 12*H(n) for 0 <= n <= max_n. Throws std::length_error above options.ceiling.
HurwitzTable hurwitz_table(std::int64_t max_n, const TableOptions& options = {});
HurwitzTable hurwitz_table(const ClassNumberTable& class_numbers);

}  // namespace classsieve
