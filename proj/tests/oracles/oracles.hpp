#pragma once

// Slow, independent reference implementations used only by tests. Nothing
// here calls into classsieve::core.

#include <cstdint>
#include <vector>

namespace oracle {

std::int64_t gcd(std::int64_t a, std::int64_t b);
bool is_prime(std::int64_t n);
bool is_squarefree(std::int64_t n);
std::int64_t moebius(std::int64_t n);
std::int64_t sigma1(std::int64_t n);

/// Kronecker symbol built from Euler's criterion on each prime factor of n.
int kronecker(std::int64_t a, std::int64_t n);

/// Direct test of the definition of a negative fundamental discriminant.
bool is_fundamental(std::int64_t d);

/// Discriminant of Q(sqrt(-n)).
std::int64_t fundamental_discriminant_of(std::int64_t n);

/// Number of primitive reduced forms of discriminant d < 0.
std::int64_t class_number(std::int64_t d);

/// 12 H(n) as a weighted count of all reduced forms of discriminant -n, with
/// weight 1/2 on multiples of x^2 + y^2 and 1/3 on multiples of x^2 + xy + y^2.
std::int64_t hurwitz12(std::int64_t n);

/// Number of primes p < x by trial division.
std::int64_t prime_count_below(std::int64_t x);

/// #{(x, y, z) in Z^3 : x^2 + y^2 + z^2 = n}.
std::int64_t sum_of_three_squares(std::int64_t n);

/// [Gamma_0(1) : Gamma_0(N)] as the number of points of P^1(Z/NZ), by a divisor sum.
std::int64_t gamma0_index(std::int64_t n);
std::int64_t gamma0_index_by_projective_line(std::int64_t n);

}  // namespace oracle
