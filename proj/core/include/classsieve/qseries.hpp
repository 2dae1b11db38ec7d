#pragma once

// Truncated q-expansions of weight 3/2 harmonic Maass forms built from
// Zagier's Eisenstein series
//
//   H(z) = -1/12 + sum_{n>=1} H(n) q^n + (1/(8 sqrt(pi))) sum_{n in Z} Gamma(-1/2, 4 pi n^2 y) q^{-n^2}.
//
// The holomorphic part is stored exactly. The nonholomorphic part is stored as
// rational weights on the exponents -m it occupies (the incomplete Gamma
// factor and the 1/(8 sqrt(pi)) prefactor are dropped), plus a separate weight
// for the n = 0 constant term. Every operator here acts diagonally on
// exponents, so whether a combination of twists annihilates the
// nonholomorphic part can be decided from these weights alone.

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "classsieve/classnumbers.hpp"
#include "classsieve/local_conditions.hpp"
#include "classsieve/rational.hpp"

namespace classsieve {

using Coefficients = std::map<std::int64_t, Rational>;

/// Quadratic character (./p) or its square, the indicator of gcd(n, p) = 1.
struct DirichletTwist {
  enum class Kind { quadratic_symbol, squared_symbol };

  Kind kind;
  std::int64_t prime;

  static DirichletTwist quadratic(std::int64_t p);
  static DirichletTwist squared(std::int64_t p);

  std::int64_t modulus() const { return prime; }
  int operator()(std::int64_t n) const;
};

class QSeries {
 public:
  QSeries(std::int64_t truncation, std::int64_t level);

  std::int64_t truncation() const { return truncation_; }
  std::int64_t level() const { return level_; }

  /// Exponent n (0 <= n <= truncation) -> coefficient of q^n. No zeros stored.
  const Coefficients& holomorphic() const { return holo_; }
  /// m > 0 -> weight of the nonholomorphic term at q^{-m}.
  const Coefficients& shadow() const { return shadow_; }
  const Rational& shadow_constant() const { return shadow_constant_; }

  Rational coefficient(std::int64_t n) const;
  Rational shadow_weight(std::int64_t m) const;

  /// Slots n >= 1 whose term q^{-n^2} carries weight.
  std::vector<std::int64_t> shadow_slots() const;
  bool shadow_empty() const { return shadow_.empty() && shadow_constant_.is_zero(); }
  bool is_zero() const { return holo_.empty() && shadow_empty(); }

  void set_coefficient(std::int64_t n, const Rational& value);
  void set_shadow(std::int64_t m, const Rational& weight);
  void set_shadow_constant(const Rational& weight) { shadow_constant_ = weight; }

  /// `n,numerator,denominator` rows for nonzero holomorphic coefficients.
  void write_csv(std::ostream& os) const;

  friend bool operator==(const QSeries&, const QSeries&) = default;

 private:
  std::int64_t truncation_;
  std::int64_t level_;
  Coefficients holo_;
  Coefficients shadow_;
  Rational shadow_constant_;
};

/// Thrown when a construction that must be holomorphic retains a
/// nonholomorphic term.
class ShadowResidueError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

QSeries zagier_series(std::int64_t truncation);
QSeries zagier_series(const HurwitzTable& table, std::int64_t truncation);

/// n -> chi(n) on the holomorphic part, -m -> chi(-m) on the shadow, and the
/// constant shadow slot picks up chi(0) = 0. Level gains a factor p^2.
QSeries twist(const QSeries& f, const DirichletTwist& chi);

/// Coefficient at n becomes the old coefficient at d n; truncation floor(T/d).
QSeries u_operator(const QSeries& f, std::int64_t d);

/// Coefficient at d n becomes the old coefficient at n; truncation d T.
QSeries v_operator(const QSeries& f, std::int64_t d);

/// Restriction to exponents <= truncation (which must not exceed f's).
QSeries truncate(const QSeries& f, std::int64_t truncation);

struct ScaledSeries {
  Rational scalar;
  const QSeries& series;
};

/// Throws std::invalid_argument on mismatched truncations.
QSeries linear_combination(std::span<const ScaledSeries> terms);
QSeries linear_combination(std::initializer_list<ScaledSeries> terms);

/// 1/2 (F - (-1/p) F_(./p)) twisted by (./p)^2: keeps (-n/p) = -1.
QSeries sieve_inert(const QSeries& f, std::int64_t p);
/// 1/2 (F + (-1/p) F_(./p)) twisted by (./p)^2: keeps (-n/p) = +1.
QSeries sieve_split(const QSeries& f, std::int64_t p);
/// U(d), then (./q)^2 for each q in `primes`, then V(d), with d = prod primes.
QSeries sieve_ramified(const QSeries& f, std::span<const std::int64_t> primes);

/// The holomorphic form with coefficient H(n) on the n meeting the local
/// conditions (S- replaced by {Q_Sigma} when empty) and 0 elsewhere.
/// Throws ShadowResidueError if any nonholomorphic weight survives.
QSeries build_h_sigma(const LocalConditions& sigma, std::int64_t truncation);

/// (H^Sigma | U(p)) - p (H^Sigma | V(p)) to the given truncation.
QSeries build_F(const LocalConditions& sigma, std::int64_t p, std::int64_t truncation);

/// Least n >= 1 whose coefficient is nonzero modulo ell, within truncation.
/// The constant term is not scanned. Requires ell prime >= 5.
std::optional<std::int64_t> ord_ell(const QSeries& f, std::int64_t ell);

/// sum r(n) q^n with r(n) = #{(x, y, z) : x^2 + y^2 + z^2 = n}.
QSeries theta_cube(std::int64_t truncation);

/// n in [1, T] where r(n) disagrees with 12H(4n) (n = 1, 2 mod 4),
/// 24H(n) (n = 3 mod 8), r(n/4) (n = 0 mod 4) or 0 (n = 7 mod 8).
std::vector<std::int64_t> gauss_mismatches(std::int64_t truncation);
bool gauss_check(std::int64_t truncation);

}  // namespace classsieve
