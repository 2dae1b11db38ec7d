#pragma once

// Deterministic number-theoretic primitives on bounded-width integers.
//
// Every routine here is a pure function. Intermediate products are taken in
// 128 bits; a result that does not fit in 64 bits raises std::overflow_error
// rather than wrapping.

#include <cstdint>
#include <vector>

namespace classsieve {

struct PrimePower {
  std::uint64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// |value| = prod prime^exponent, primes strictly increasing, exponents >= 1.
struct FactoredInteger {
  std::uint64_t value = 1;
  std::vector<PrimePower> factors;
};

/// n = square_root^2 * squarefree, with squarefree squarefree.
struct SquarefreeParts {
  std::int64_t square_root;
  std::int64_t squarefree;

  friend bool operator==(const SquarefreeParts&, const SquarefreeParts&) = default;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_pow(std::int64_t base, unsigned exponent);

/// Floor of the square root.
std::uint64_t isqrt(std::uint64_t n);
bool is_square(std::uint64_t n);

/// Non-negative residue of a modulo m (m > 0).
std::int64_t floor_mod(std::int64_t a, std::int64_t m);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m);

/// Exponent of p in n (n != 0, p >= 2).
int valuation(std::int64_t n, std::int64_t p);

/// Kronecker symbol (a/n) with the standard completion: (a/0) = [a = +-1],
/// (a/-1) = sign(a), (a/2) from a mod 8.
int kronecker(std::int64_t a, std::int64_t n);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Complete factorization for 1 <= n <= 2^63.
FactoredInteger factor(std::uint64_t n);

int moebius(std::int64_t n);
std::int64_t sigma1(std::int64_t n);
SquarefreeParts squarefree_decompose(std::int64_t n);

bool is_fundamental_discriminant(std::int64_t d);

/// Discriminant of Q(sqrt(-n)) for n >= 1.
std::int64_t fundamental_discriminant_of(std::int64_t n);

/// All primes <= limit, ascending.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// Number of primes p < x, by segmented sieve.
std::int64_t prime_count_below(std::int64_t x);

}  // namespace classsieve
