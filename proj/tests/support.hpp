#pragma once

#include <map>
#include <random>
#include <vector>

#include "cyclo/cosets.hpp"
#include "cyclo/arith.hpp"
#include "cyclo/families.hpp"
#include "cyclo/field.hpp"
#include "cyclo/poly.hpp"
#include "oracle.hpp"

namespace testing_support {

inline oracle::NaiveField naive(const cyclo::Field& f) { return {f.p(), f.m(), f.modulus()}; }

inline cyclo::Elem random_elem(const cyclo::Field& f, std::mt19937_64& rng, bool nonzero = false) {
  std::uniform_int_distribution<std::uint32_t> d(nonzero ? 1 : 0, f.q() - 1);
  return f.elem(d(rng));
}

// Random polynomial with up to `terms` terms and exponents below max_exp.
inline cyclo::Poly random_poly(const cyclo::FieldPtr& f, std::mt19937_64& rng, int terms, std::uint64_t max_exp) {
  std::uniform_int_distribution<std::uint64_t> de(0, max_exp - 1);
  std::vector<cyclo::Poly::Term> ts;
  for (int i = 0; i < terms; ++i) ts.push_back({de(rng), random_elem(*f, rng)});
  return cyclo::Poly::from_terms(f, ts);
}

inline std::map<std::uint64_t, std::uint32_t> term_map(const cyclo::Poly& p) {
  std::map<std::uint64_t, std::uint32_t> out;
  for (const auto& t : p.terms()) out[t.exp] = t.coeff.code();
  return out;
}

inline const std::vector<std::pair<std::uint32_t, std::uint32_t>>& small_fields() {
  static const std::vector<std::pair<std::uint32_t, std::uint32_t>> v = {
      {2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {7, 2}, {2, 6}, {3, 4}};
  return v;
}

// Binomial-branch parameters inside the family's hypothesis: u_i = r_i + e_i s
// with gcd(e_i, ell) = 1, and a_i = w (c - w) for w = eta^(i e_i), c in C_0
// with c != w, so that (w + a_i / w)^s = c^s = 1. Needs 2 ell | q - 1.
inline cyclo::F17Params admissible_binomial(const cyclo::FieldPtr& f, std::uint64_t ell, std::mt19937_64& rng) {
  const std::uint64_t n = f->q() - 1;
  const std::uint64_t s = n / ell;
  const cyclo::Elem eta = f->exp(static_cast<std::int64_t>(s / 2));
  cyclo::F17Params p;
  p.ell = ell;
  for (std::uint64_t i = 0; i < ell; ++i) {
    const std::uint64_t r = 1 + rng() % (n - 1);
    std::uint64_t e;
    do {
      e = 1 + rng() % (2 * ell);
    } while (cyclo::arith::gcd(e, ell) != 1);
    const cyclo::Elem w = eta.pow(static_cast<std::int64_t>((i * e) % (2 * ell)));
    cyclo::Elem c = w;
    while (c == w) c = f->exp(static_cast<std::int64_t>(ell * (rng() % s)));
    p.r.push_back(r);
    p.u.push_back(r + e * s);
    p.a.push_back(w * (c - w));
  }
  return p;
}

}  // namespace testing_support
