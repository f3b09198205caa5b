#include "cyclo/arith.hpp"

#include <algorithm>
#include <numeric>

namespace cyclo::arith {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t mod(std::int64_t a, std::uint64_t n) {
  if (a >= 0) return static_cast<std::uint64_t>(a) % n;
  // -(a + 1) avoids overflow at INT64_MIN
  const std::uint64_t neg = static_cast<std::uint64_t>(-(a + 1)) % n;
  return (n - 1 - neg) % n;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, n);
    base = mul_mod(base, base, n);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t ipow_bounded(std::uint64_t base, unsigned exp, std::uint64_t limit) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > limit / base) return 0;
    result *= base;
  }
  return result > limit ? 0 : result;
}

std::uint64_t mult_order(std::uint64_t a, std::uint64_t n) {
  std::uint64_t order = 1;
  std::uint64_t x = a % n;
  while (x != 1 % n) {
    x = mul_mod(x, a, n);
    ++order;
  }
  return order;
}

}  // namespace cyclo::arith
