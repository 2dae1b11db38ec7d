#include "classsieve/arithmetic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace classsieve {

namespace {

constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;

std::uint64_t magnitude(std::int64_t n) {
  return n < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(n)
               : static_cast<std::uint64_t>(n);
}

// Pollard-Brent; n odd composite with no factor below the trial bound.
std::uint64_t find_divisor(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    std::uint64_t r = 1;
    constexpr std::uint64_t kBlock = 128;
    auto step = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBlock, r - k); ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBlock;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_large_factors(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = find_divisor(n);
  collect_large_factors(d, out);
  collect_large_factors(n / d, out);
}

}  // namespace

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in addition");
  }
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in multiplication");
  }
  return r;
}

std::int64_t checked_pow(std::int64_t base, unsigned exponent) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) r = checked_mul(r, base);
  return r;
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::uint64_t n) {
  const std::uint64_t r = isqrt(n);
  return r * r == n;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  if (p < 2) throw std::invalid_argument("valuation base must be >= 2");
  std::uint64_t m = magnitude(n);
  const auto up = static_cast<std::uint64_t>(p);
  int v = 0;
  while (m % up == 0) {
    m /= up;
    ++v;
  }
  return v;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0 && a < 0) result = -result;
  std::uint64_t m = magnitude(n);

  const int twos = std::countr_zero(m);
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    const std::int64_t a8 = floor_mod(a, 8);
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
    m >>= twos;
  }
  if (m == 1) return result;

  // Jacobi symbol for odd m.
  std::uint64_t x = a < 0 ? (m - magnitude(a) % m) % m : magnitude(a) % m;
  std::uint64_t y = m;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const std::uint64_t y8 = y & 7;
      if (y8 == 3 || y8 == 5) result = -result;
    }
    std::swap(x, y);
    if ((x & 3) == 3 && (y & 3) == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(base, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FactoredInteger factor(std::uint64_t n) {
  if (n == 0 || n > (std::uint64_t{1} << 63)) {
    throw std::invalid_argument("factor: argument must lie in [1, 2^63]");
  }
  FactoredInteger result;
  result.value = n;
  auto push = [&](std::uint64_t p) {
    if (!result.factors.empty() && result.factors.back().prime == p) {
      ++result.factors.back().exponent;
    } else {
      result.factors.push_back({p, 1});
    }
  };
  while ((n & 1) == 0) {
    n >>= 1;
    push(2);
  }
  for (std::uint64_t d = 3; d <= kTrialDivisionLimit && d * d <= n; d += 2) {
    while (n % d == 0) {
      n /= d;
      push(d);
    }
  }
  if (n > 1) {
    std::vector<std::uint64_t> large;
    collect_large_factors(n, large);
    std::sort(large.begin(), large.end());
    for (std::uint64_t p : large) push(p);
  }
  return result;
}

int moebius(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("moebius: n must be >= 1");
  const FactoredInteger f = factor(static_cast<std::uint64_t>(n));
  for (const auto& pe : f.factors) {
    if (pe.exponent > 1) return 0;
  }
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

std::int64_t sigma1(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("sigma1: n must be >= 1");
  std::int64_t total = 1;
  for (const auto& pe : factor(static_cast<std::uint64_t>(n)).factors) {
    const auto p = static_cast<std::int64_t>(pe.prime);
    std::int64_t term = 1;
    std::int64_t power = 1;
    for (int i = 0; i < pe.exponent; ++i) {
      power = checked_mul(power, p);
      term = checked_add(term, power);
    }
    total = checked_mul(total, term);
  }
  return total;
}

SquarefreeParts squarefree_decompose(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("squarefree_decompose: n must be >= 1");
  SquarefreeParts parts{1, 1};
  for (const auto& pe : factor(static_cast<std::uint64_t>(n)).factors) {
    const auto p = static_cast<std::int64_t>(pe.prime);
    parts.square_root *= checked_pow(p, static_cast<unsigned>(pe.exponent / 2));
    if (pe.exponent % 2 == 1) parts.squarefree *= p;
  }
  return parts;
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d >= 0) throw std::invalid_argument("is_fundamental_discriminant: D must be negative");
  const std::int64_t r = floor_mod(d, 4);
  if (r == 1) return moebius(-d) != 0;
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t rm = floor_mod(m, 4);
  return (rm == 2 || rm == 3) && moebius(-m) != 0;
}

std::int64_t fundamental_discriminant_of(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("fundamental_discriminant_of: n must be >= 1");
  const std::int64_t m = squarefree_decompose(n).squarefree;
  return floor_mod(-m, 4) == 1 ? -m : checked_mul(-4, m);
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::int64_t prime_count_below(std::int64_t x) {
  if (x <= 2) return 0;
  const std::int64_t last = x - 1;
  const auto base = primes_up_to(static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(last))));
  constexpr std::int64_t kSegment = 1 << 20;
  std::vector<char> mark(kSegment);
  std::int64_t count = 0;
  for (std::int64_t lo = 2; lo <= last; lo += kSegment) {
    const std::int64_t hi = std::min(last, lo + kSegment - 1);
    std::fill(mark.begin(), mark.begin() + (hi - lo + 1), 1);
    for (std::int64_t p : base) {
      if (p * p > hi) break;
      std::int64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::int64_t j = start; j <= hi; j += p) mark[j - lo] = 0;
    }
    count += std::count(mark.begin(), mark.begin() + (hi - lo + 1), 1);
  }
  return count;
}

}  // namespace classsieve
