#pragma once

#include <cstdint>
#include <vector>

// Small integer helpers shared by the field and criteria code.
namespace cyclo::arith {

// gcd(0, n) == n, so a lone zero difference yields n.
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

bool is_prime(std::uint64_t n);

// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::vector<std::uint64_t> divisors(std::uint64_t n);

// Non-negative residue of a mod n for any signed a.
std::uint64_t mod(std::int64_t a, std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n);

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t n);

// Integer power with a saturating result; returns 0 when the value exceeds limit.
std::uint64_t ipow_bounded(std::uint64_t base, unsigned exp, std::uint64_t limit);

// Multiplicative order of a modulo n (requires gcd(a, n) == 1, n >= 2).
std::uint64_t mult_order(std::uint64_t a, std::uint64_t n);

}  // namespace cyclo::arith
