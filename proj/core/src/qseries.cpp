#include "classsieve/qseries.hpp"

#include <numeric>
#include <ostream>
#include <string>

#include "classsieve/arithmetic.hpp"
#include "classsieve/levels.hpp"

namespace classsieve {

namespace {

void require_odd_prime(std::int64_t p, const char* who) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not an odd prime");
  }
}

void put(Coefficients& map, std::int64_t key, const Rational& value) {
  if (value.is_zero()) {
    map.erase(key);
  } else {
    map[key] = value;
  }
}

QSeries combine_with_twist(const QSeries& f, std::int64_t p, int sign) {
  require_odd_prime(p, "sieve");
  const QSeries twisted = twist(f, DirichletTwist::quadratic(p));
  const Rational half(1, 2);
  const Rational scale = half * Rational(sign * kronecker(-1, p));
  const QSeries g = linear_combination({{half, f}, {scale, twisted}});
  return twist(g, DirichletTwist::squared(p));
}

}  // namespace

DirichletTwist DirichletTwist::quadratic(std::int64_t p) {
  require_odd_prime(p, "quadratic twist");
  return {Kind::quadratic_symbol, p};
}

DirichletTwist DirichletTwist::squared(std::int64_t p) {
  require_odd_prime(p, "squared twist");
  return {Kind::squared_symbol, p};
}

int DirichletTwist::operator()(std::int64_t n) const {
  const int symbol = kronecker(n, prime);
  return kind == Kind::quadratic_symbol ? symbol : symbol * symbol;
}

QSeries::QSeries(std::int64_t truncation, std::int64_t level)
    : truncation_(truncation), level_(level) {
  if (truncation < 0) throw std::invalid_argument("QSeries: truncation must be >= 0");
  if (level < 1) throw std::invalid_argument("QSeries: level must be >= 1");
}

Rational QSeries::coefficient(std::int64_t n) const {
  const auto it = holo_.find(n);
  return it == holo_.end() ? Rational{} : it->second;
}

Rational QSeries::shadow_weight(std::int64_t m) const {
  const auto it = shadow_.find(m);
  return it == shadow_.end() ? Rational{} : it->second;
}

std::vector<std::int64_t> QSeries::shadow_slots() const {
  std::vector<std::int64_t> slots;
  for (const auto& [m, w] : shadow_) {
    if (is_square(static_cast<std::uint64_t>(m))) {
      slots.push_back(static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(m))));
    }
  }
  return slots;
}

void QSeries::set_coefficient(std::int64_t n, const Rational& value) {
  if (n < 0 || n > truncation_) {
    throw std::out_of_range("exponent " + std::to_string(n) + " outside truncation");
  }
  put(holo_, n, value);
}

void QSeries::set_shadow(std::int64_t m, const Rational& weight) {
  if (m < 1 || m > truncation_) {
    throw std::out_of_range("shadow exponent -" + std::to_string(m) + " outside truncation");
  }
  put(shadow_, m, weight);
}

void QSeries::write_csv(std::ostream& os) const {
  os << "n,numerator,denominator\n";
  for (const auto& [n, c] : holo_) os << n << ',' << c.num() << ',' << c.den() << '\n';
}

QSeries zagier_series(const HurwitzTable& table, std::int64_t truncation) {
  if (truncation < 1) throw std::invalid_argument("zagier_series: truncation must be >= 1");
  if (table.max_n() < truncation) throw std::invalid_argument("zagier_series: Hurwitz table too short");
  QSeries f(truncation, 4);
  for (std::int64_t n = 0; n <= truncation; ++n) {
    if (table[n] != 0) f.set_coefficient(n, Rational(table[n], 12));
  }
  // n and -n contribute the same term, so each square exponent carries 2.
  f.set_shadow_constant(Rational(1));
  for (std::int64_t n = 1; n * n <= truncation; ++n) f.set_shadow(n * n, Rational(2));
  return f;
}

QSeries zagier_series(std::int64_t truncation) {
  return zagier_series(hurwitz_table(std::max<std::int64_t>(truncation, 0)), truncation);
}

QSeries twist(const QSeries& f, const DirichletTwist& chi) {
  const std::int64_t m = chi.modulus();
  QSeries out(f.truncation(), checked_mul(f.level(), checked_mul(m, m)));
  for (const auto& [n, c] : f.holomorphic()) {
    const int v = chi(n);
    if (v != 0) out.set_coefficient(n, c * Rational(v));
  }
  for (const auto& [e, w] : f.shadow()) {
    const int v = chi(-e);
    if (v != 0) out.set_shadow(e, w * Rational(v));
  }
  out.set_shadow_constant(f.shadow_constant() * Rational(chi(0)));
  return out;
}

QSeries u_operator(const QSeries& f, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("u_operator: d must be >= 1");
  QSeries out(f.truncation() / d, checked_mul(f.level(), d));
  for (const auto& [n, c] : f.holomorphic()) {
    if (n % d == 0) out.set_coefficient(n / d, c);
  }
  for (const auto& [e, w] : f.shadow()) {
    if (e % d == 0) out.set_shadow(e / d, w);
  }
  out.set_shadow_constant(f.shadow_constant());
  return out;
}

QSeries v_operator(const QSeries& f, std::int64_t d) {
  if (d < 1) throw std::invalid_argument("v_operator: d must be >= 1");
  QSeries out(checked_mul(f.truncation(), d), checked_mul(f.level(), d));
  for (const auto& [n, c] : f.holomorphic()) out.set_coefficient(n * d, c);
  for (const auto& [e, w] : f.shadow()) out.set_shadow(e * d, w);
  out.set_shadow_constant(f.shadow_constant());
  return out;
}

QSeries truncate(const QSeries& f, std::int64_t truncation) {
  if (truncation > f.truncation()) {
    throw std::invalid_argument("truncate: cannot extend a series beyond its truncation");
  }
  QSeries out(truncation, f.level());
  for (const auto& [n, c] : f.holomorphic()) {
    if (n > truncation) break;
    out.set_coefficient(n, c);
  }
  for (const auto& [e, w] : f.shadow()) {
    if (e > truncation) break;
    out.set_shadow(e, w);
  }
  out.set_shadow_constant(f.shadow_constant());
  return out;
}

QSeries linear_combination(std::span<const ScaledSeries> terms) {
  if (terms.empty()) throw std::invalid_argument("linear_combination: no terms");
  const std::int64_t truncation = terms.front().series.truncation();
  std::int64_t level = 1;
  for (const auto& t : terms) {
    if (t.series.truncation() != truncation) {
      throw std::invalid_argument("linear_combination: truncation mismatch");
    }
    level = std::lcm(level, t.series.level());
  }
  Coefficients holo, shadow;
  Rational constant;
  for (const auto& t : terms) {
    if (t.scalar.is_zero()) continue;
    for (const auto& [n, c] : t.series.holomorphic()) holo[n] += t.scalar * c;
    for (const auto& [e, w] : t.series.shadow()) shadow[e] += t.scalar * w;
    constant += t.scalar * t.series.shadow_constant();
  }
  QSeries out(truncation, level);
  for (const auto& [n, c] : holo) out.set_coefficient(n, c);
  for (const auto& [e, w] : shadow) out.set_shadow(e, w);
  out.set_shadow_constant(constant);
  return out;
}

QSeries linear_combination(std::initializer_list<ScaledSeries> terms) {
  return linear_combination(std::span<const ScaledSeries>(terms.begin(), terms.size()));
}

QSeries sieve_inert(const QSeries& f, std::int64_t p) { return combine_with_twist(f, p, -1); }

QSeries sieve_split(const QSeries& f, std::int64_t p) { return combine_with_twist(f, p, +1); }

QSeries sieve_ramified(const QSeries& f, std::span<const std::int64_t> primes) {
  if (primes.empty()) return f;
  std::int64_t d = 1;
  for (std::int64_t q : primes) {
    require_odd_prime(q, "sieve_ramified");
    if (d % q == 0) throw std::invalid_argument("sieve_ramified: repeated prime");
    d = checked_mul(d, q);
  }
  QSeries g = u_operator(f, d);
  for (std::int64_t q : primes) g = twist(g, DirichletTwist::squared(q));
  return v_operator(g, d);
}

QSeries build_h_sigma(const LocalConditions& sigma, std::int64_t truncation) {
  require_valid(sigma);
  if (truncation < 1) throw std::invalid_argument("build_h_sigma: truncation must be >= 1");
  const LocalConditions eff = effective_conditions(sigma).normalized();
  std::int64_t d = 1;
  for (std::int64_t q : eff.ramified) d = checked_mul(d, q);
  // U(d) then V(d) keeps d * floor(T0 / d) exponents; start high enough to cover T.
  const std::int64_t start = checked_mul(d, (truncation + d - 1) / d);

  QSeries f = zagier_series(start);
  for (std::int64_t p : eff.inert) f = sieve_inert(f, p);
  for (std::int64_t p : eff.split) f = sieve_split(f, p);
  f = sieve_ramified(f, eff.ramified);
  if (!f.shadow_empty()) {
    throw ShadowResidueError("build_h_sigma: nonholomorphic part survived the sieve (" +
                             std::to_string(f.shadow().size()) + " terms)");
  }
  return truncate(f, truncation);
}

QSeries build_F(const LocalConditions& sigma, std::int64_t p, std::int64_t truncation) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("build_F: " + std::to_string(p) + " is not prime");
  }
  if (p == sigma.ell) throw std::invalid_argument("build_F: p must differ from ell");
  for (std::int64_t q : effective_conditions(sigma).all_primes()) {
    if (q == p) throw std::invalid_argument("build_F: p must lie outside the local condition sets");
  }
  if (truncation < 1) throw std::invalid_argument("build_F: truncation must be >= 1");
  const QSeries h = build_h_sigma(sigma, checked_mul(p, truncation));
  const QSeries contracted = u_operator(h, p);
  const QSeries dilated = truncate(v_operator(truncate(h, (truncation + p - 1) / p), p), truncation);
  return linear_combination({{Rational(1), contracted}, {Rational(-p), dilated}});
}

std::optional<std::int64_t> ord_ell(const QSeries& f, std::int64_t ell) {
  if (ell < 5 || !is_prime(static_cast<std::uint64_t>(ell))) {
    throw std::invalid_argument("ord_ell: ell must be a prime >= 5");
  }
  for (const auto& [n, c] : f.holomorphic()) {
    if (n == 0) continue;
    if (c.den() % ell == 0) throw std::domain_error("ord_ell: coefficient not ell-integral");
    if (c.num() % ell != 0) return n;
  }
  return std::nullopt;
}

QSeries theta_cube(std::int64_t truncation) {
  if (truncation < 1) throw std::invalid_argument("theta_cube: truncation must be >= 1");
  std::vector<std::int64_t> r(static_cast<std::size_t>(truncation) + 1, 0);
  const auto s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(truncation)));
  for (std::int64_t x = -s; x <= s; ++x) {
    for (std::int64_t y = -s; y <= s; ++y) {
      const std::int64_t xy = x * x + y * y;
      if (xy > truncation) continue;
      for (std::int64_t z = -s; z <= s; ++z) {
        const std::int64_t n = xy + z * z;
        if (n <= truncation) ++r[n];
      }
    }
  }
  QSeries theta(truncation, 4);
  for (std::int64_t n = 0; n <= truncation; ++n) theta.set_coefficient(n, Rational(r[n]));
  return theta;
}

std::vector<std::int64_t> gauss_mismatches(std::int64_t truncation) {
  const QSeries theta = theta_cube(truncation);
  const HurwitzTable table = hurwitz_table(checked_mul(4, truncation));
  std::vector<std::int64_t> bad;
  for (std::int64_t n = 1; n <= truncation; ++n) {
    const Rational r = theta.coefficient(n);
    Rational expected;
    if (n % 4 == 1 || n % 4 == 2) {
      expected = Rational(table[4 * n]);  // 12 H(4n)
    } else if (n % 8 == 3) {
      expected = Rational(2 * table[n]);  // 24 H(n)
    } else if (n % 4 == 0) {
      expected = theta.coefficient(n / 4);
    } else {
      expected = Rational(0);  // n = 7 mod 8
    }
    if (r != expected) bad.push_back(n);
  }
  return bad;
}

bool gauss_check(std::int64_t truncation) { return gauss_mismatches(truncation).empty(); }

}  // namespace classsieve
