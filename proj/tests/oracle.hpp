#pragma once

// Reference implementations that share no code with the library: schoolbook
// arithmetic in GF(p)[y]/(mod), plain power sums for evaluation, and value
// counting for bijectivity.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<std::uint32_t>;

struct NaiveField {
  std::uint32_t p;
  std::uint32_t m;
  Vec mod;  // monic, low to high, size m + 1

  std::uint32_t q() const {
    std::uint32_t v = 1;
    for (std::uint32_t i = 0; i < m; ++i) v *= p;
    return v;
  }

  Vec decode(std::uint32_t code) const {
    Vec c(m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
      c[i] = code % p;
      code /= p;
    }
    return c;
  }

  std::uint32_t encode(const Vec& c) const {
    std::uint32_t code = 0;
    for (std::uint32_t i = m; i-- > 0;) code = code * p + c[i];
    return code;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    Vec x = decode(a), y = decode(b);
    for (std::uint32_t i = 0; i < m; ++i) x[i] = (x[i] + y[i]) % p;
    return encode(x);
  }

  std::uint32_t neg(std::uint32_t a) const {
    Vec x = decode(a);
    for (auto& v : x) v = (p - v) % p;
    return encode(x);
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const Vec x = decode(a), y = decode(b);
    std::vector<std::uint64_t> prod(2 * m, 0);
    for (std::uint32_t i = 0; i < m; ++i) {
      for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    }
    for (std::uint32_t d = 2 * m - 1; d >= m; --d) {
      const auto c = prod[d];
      if (c == 0) continue;
      for (std::uint32_t k = 0; k <= m; ++k) prod[d - m + k] = (prod[d - m + k] + (p - c) * mod[k]) % p;
    }
    Vec out(m);
    for (std::uint32_t i = 0; i < m; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return encode(out);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  std::uint64_t order(std::uint32_t a) const {
    std::uint32_t x = a;
    std::uint64_t k = 1;
    while (x != 1) {
      x = mul(x, a);
      ++k;
      if (k > q()) return 0;
    }
    return k;
  }

  std::uint32_t from_int(std::int64_t v) const {
    const auto r = static_cast<std::uint32_t>(((v % static_cast<std::int64_t>(p)) + p) % p);
    return r;
  }

  // sum c_e x^e with x^0 = 1 (also at x = 0).
  std::uint32_t eval(const std::map<std::uint64_t, std::uint32_t>& terms, std::uint32_t x) const {
    std::uint32_t acc = 0;
    for (const auto& [e, c] : terms) {
      std::uint32_t xe = 1;
      if (e > 0) {
        if (x == 0) {
          xe = 0;
        } else {
          // x^(q-1) = 1 for x != 0
          xe = pow(x, (e - 1) % (q() - 1) + 1);
        }
      }
      acc = add(acc, mul(c, xe));
    }
    return acc;
  }
};

// All monic polynomials of degree d over GF(p), low to high.
inline std::vector<Vec> monic_polys(std::uint32_t p, std::uint32_t d) {
  std::vector<Vec> out;
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < d; ++i) count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    Vec v(d + 1, 0);
    auto x = c;
    for (std::uint32_t i = 0; i < d; ++i) {
      v[i] = static_cast<std::uint32_t>(x % p);
      x /= p;
    }
    v[d] = 1;
    out.push_back(v);
  }
  return out;
}

// Remainder of a by monic b over GF(p).
inline Vec poly_rem(Vec a, const Vec& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const auto c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] = (a[shift + k] + (p - c) * b[k]) % p;
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
inline bool irreducible(const Vec& f, std::uint32_t p) {
  const std::uint32_t d = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t k = 1; 2 * k <= d; ++k) {
    for (const auto& g : monic_polys(p, k)) {
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Smallest monic irreducible comparing c_0 first, then c_1, ...
inline Vec smallest_irreducible(std::uint32_t p, std::uint32_t m) {
  Vec best;
  for (const auto& f : monic_polys(p, m)) {
    if ((best.empty() || f < best) && irreducible(f, p)) best = f;
  }
  return best;
}

inline bool is_permutation(const std::vector<std::uint32_t>& values) {
  std::vector<int> hits(values.size(), 0);
  for (auto v : values) {
    if (v >= values.size() || hits[v]++) return false;
  }
  return true;
}

}  // namespace oracle
