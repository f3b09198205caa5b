#include "cyclo/families.hpp"

#include <algorithm>
#include <set>

#include "cyclo/arith.hpp"
#include "cyclo/cosets.hpp"
#include "cyclo/criteria.hpp"

namespace cyclo {

namespace {

[[noreturn]] void domain(const std::string& why) { throw Error(ErrorCode::DomainCheckFailed, why); }

bool coprime(std::uint64_t a, std::uint64_t b) { return arith::gcd(a, b) == 1; }

// Exponent base^k folded into [1, q-1] the way canonicalization folds it.
std::uint64_t folded_power(std::uint64_t base, std::uint64_t k, std::uint32_t q) {
  const std::uint64_t r = arith::pow_mod(base, k, q - 1);
  return r == 0 ? q - 1 : r;
}

Poly xpow(const FieldPtr& f, std::uint64_t e) { return Poly::monomial(f, f->one(), fold_exponent(e, f->q())); }

Poly constant(const FieldPtr& f, Elem c) { return Poly::constant(f, c); }

// Poly from (integer coefficient, exponent) pairs.
Poly literal(const FieldPtr& f, const std::vector<std::pair<std::int64_t, std::uint64_t>>& terms) {
  std::vector<Poly::Term> ts;
  for (const auto& [c, e] : terms) ts.push_back({fold_exponent(e, f->q()), f->from_int(c)});
  return Poly::from_terms(f, ts);
}

// p(x^e) as a function on the field: exponents folded as they are formed.
Poly subst_power(const Poly& p, std::uint64_t e) {
  const auto& f = p.field_ptr();
  const std::uint64_t n = f->q() - 1;
  std::vector<Poly::Term> ts;
  for (const auto& t : p.canonical().terms()) {
    if (t.exp == 0) {
      ts.push_back(t);
    } else {
      const std::uint64_t r = arith::mul_mod(t.exp, e, n);
      ts.push_back({r == 0 ? n : r, t.coeff});
    }
  }
  return Poly::from_terms(f, ts);
}

// 1 + x + ... + x^k.
Poly h_poly(const FieldPtr& f, std::uint64_t k) {
  std::vector<Poly::Term> ts;
  for (std::uint64_t j = 0; j <= k; ++j) ts.push_back({fold_exponent(j, f->q()), f->one()});
  return Poly::from_terms(f, ts);
}

Elem h_value(Elem z, std::uint64_t k) {
  Elem acc = z.field().zero();
  Elem pw = z.field().one();
  for (std::uint64_t j = 0; j <= k; ++j) {
    acc += pw;
    pw *= z;
  }
  return acc;
}

// x^3 + theta x^2 + theta^2 x.
Poly cubic(const FieldPtr& f, Elem theta) {
  return Poly::from_terms(f, {{3, f->one()}, {2, theta}, {1, theta * theta}});
}

int eta(Elem x) { return quadratic_character(x.field(), x); }

CosetsPtr cosets_or_domain(const FieldPtr& f, std::uint64_t ell) {
  if (ell == 0 || (f->q() - 1) % ell != 0) {
    domain("ell = " + std::to_string(ell) + " does not divide q - 1 = " + std::to_string(f->q() - 1));
  }
  return make_cosets(f, ell);
}

// Number m' with q0^m' = q, requiring q0 to be a power of p.
std::uint64_t subfield_degree(const Field& f, std::uint64_t q0) {
  if (q0 < 2) domain("q0 must be at least 2");
  std::uint64_t v = q0;
  std::uint64_t d = 0;
  while (v % f.p() == 0) {
    v /= f.p();
    ++d;
  }
  if (v != 1 || f.m() % d != 0) domain("q0 = " + std::to_string(q0) + " is not a subfield order of GF(" + std::to_string(f.q()) + ")");
  return f.m() / d;
}

bool in_subfield(Elem c, std::uint64_t q0) { return c.pow(static_cast<std::int64_t>(q0)) == c; }

void require_subfield_poly(const Poly& p, std::uint64_t q0, const std::string& name) {
  for (const auto& t : p.terms()) {
    if (!in_subfield(t.coeff, q0)) domain(name + " has a coefficient outside the subfield of order " + std::to_string(q0));
  }
}

void require_size(std::size_t got, std::uint64_t want, const std::string& name) {
  if (got != want) domain(name + " needs " + std::to_string(want) + " entries, got " + std::to_string(got));
}

void require_positive(const std::vector<std::uint64_t>& v, const std::string& name) {
  for (auto x : v) {
    if (x == 0) domain(name + " entries must be positive");
  }
}

void require_nonzero(Elem e, const std::string& name) {
  if (e.is_zero()) domain(name + " must be nonzero");
}

bool residues_of(const std::vector<std::uint64_t>& vals, std::uint64_t ell) {
  std::vector<std::int64_t> v;
  for (auto x : vals) v.push_back(static_cast<std::int64_t>(x % ell));
  return complete_residues(v, ell);
}

bool all_coprime(const std::vector<std::uint64_t>& r, std::uint64_t s) {
  return std::all_of(r.begin(), r.end(), [&](std::uint64_t x) { return coprime(x, s); });
}

// {i r_i mod ell}.
std::vector<std::uint64_t> index_products(const std::vector<std::uint64_t>& r, std::uint64_t ell) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < r.size(); ++i) out.push_back(arith::mul_mod(i, r[i], ell));
  return out;
}

struct Built {
  Poly poly;
  CycloMap map;
  bool predicted;
  bool iff;
  std::optional<Elem> offset;
};

// ---------------------------------------------------------------------------
// Characteristic-3 building blocks shared by F4, F5 and the F6 presets.

struct CubicFamily {
  Poly poly;
  CycloMap map;
  bool predicted;
};

void require_char3(const Field& f) {
  if (f.p() != 3) domain("family requires characteristic 3");
}

CubicFamily f4_core(const FieldPtr& f, Elem alpha, Elem beta, Elem theta, std::uint64_t t) {
  require_char3(*f);
  require_nonzero(alpha, "alpha");
  require_nonzero(beta, "beta");
  if (t == 0) domain("t must be positive");
  auto cs = make_cosets(f, 2);
  const std::uint64_t s = cs->s();
  const Poly cub = cubic(f, theta) * beta;
  const Poly at = xpow(f, t) * alpha;
  Poly poly = ((cub - at).mul_mod(xpow(f, s)) - (cub + at)).canonical();
  CycloMap map(cs, {{alpha, xpow(f, t)}, {beta, cubic(f, theta)}});
  const bool pred = coprime(t, s) && (theta.is_zero() || eta(theta) == 1) && eta(alpha) == eta(beta);
  return {std::move(poly), std::move(map), pred};
}

CubicFamily f5_core(const FieldPtr& f, Elem alpha, Elem beta, Elem theta, std::uint64_t t) {
  require_char3(*f);
  require_nonzero(alpha, "alpha");
  require_nonzero(beta, "beta");
  require_nonzero(theta, "theta");
  if (t == 0) domain("t must be positive");
  auto cs = make_cosets(f, 2);
  const std::uint64_t s = cs->s();
  const Poly cub = cubic(f, theta) * beta;
  const Poly at = xpow(f, t) * alpha;
  Poly poly = (-(cub - at).mul_mod(xpow(f, s)) - (cub + at)).canonical();
  CycloMap map(cs, {{beta, cubic(f, theta)}, {alpha, xpow(f, t)}});
  const bool odd = t % 2 == 1;
  const bool pred = coprime(t, s) && eta(theta) == -1 &&
                    ((odd && eta(alpha) == eta(beta)) || (!odd && eta(alpha) == -eta(beta)));
  return {std::move(poly), std::move(map), pred};
}

// A_0 x^(r_0)(x^(2s) + x^s + 1) + A_1 x^(r_1)(zeta x^(2s) + zeta^2 x^s + 1)
//   + A_2 x^(r_2)(zeta^2 x^(2s) + zeta x^s + 1)
Poly three_branch_poly(const CosetStructure& cs, const std::vector<Elem>& a, const std::vector<std::uint64_t>& r) {
  const auto& f = cs.field_ptr();
  const std::uint64_t s = cs.s();
  const Elem z = cs.zeta();
  Poly total(f);
  for (std::uint64_t i = 0; i < 3; ++i) {
    const Elem c2 = z.pow(static_cast<std::int64_t>(i));
    const Elem c1 = z.pow(static_cast<std::int64_t>(2 * i));
    const Poly sel = Poly::from_terms(f, {{2 * s, c2}, {s, c1}, {0, f->one()}});
    total += (xpow(f, r[i]) * a[i]).mul_mod(sel);
  }
  return total.canonical();
}

// ---------------------------------------------------------------------------

Built build(const FieldPtr& f, const F1Params& p) {
  if (f->q() % 2 == 0) domain("index 2 needs odd q");
  auto cs = make_cosets(f, 2);
  CycloMap map(cs, {{p.A0, p.f0.canonical()}, {p.A1, p.f1.canonical()}});
  auto image = [&](Elem a, const Poly& g, std::uint64_t i) {
    std::set<std::uint32_t> out;
    for (const Elem& x : cs->members(i)) out.insert((a * g.eval(x)).code());
    return out;
  };
  auto coset = [&](std::uint64_t i) {
    std::set<std::uint32_t> out;
    for (const Elem& x : cs->members(i)) out.insert(x.code());
    return out;
  };
  const auto i0 = image(p.A0, p.f0, 0);
  const auto i1 = image(p.A1, p.f1, 1);
  const bool pred = (i0 == coset(0) && i1 == coset(1)) || (i0 == coset(1) && i1 == coset(0));
  return {map_to_poly(map), std::move(map), pred, false, std::nullopt};
}

Built build(const FieldPtr& f, const F2Params& p) {
  if (f->q() % 2 == 0) domain("index 2 needs odd q");
  if (p.r0 == 0 || p.r1 == 0) domain("r_0 and r_1 must be positive");
  auto cs = make_cosets(f, 2);
  const std::uint64_t s = cs->s();
  CycloMap map(cs, {{f->one(), xpow(f, p.r0).mul_mod(subst_power(p.f0, s))},
                    {f->one(), xpow(f, p.r1).mul_mod(subst_power(p.f1, s))}});
  const int target = p.r1 % 2 == 1 ? 1 : -1;
  const bool pred = coprime(p.r0, s) && coprime(p.r1, s) && eta(p.f0.eval(f->one()) * p.f1.eval(-f->one())) == target;
  return {map_to_poly(map), std::move(map), pred, true, std::nullopt};
}

Built build(const FieldPtr& f, const F3Params& p) {
  if (f->p() == 2) domain("family requires odd characteristic");
  if (p.t == 0 || p.r == 0) domain("t and r must be positive");
  auto cs = make_cosets(f, 2);
  const std::uint64_t s = cs->s();
  const std::uint64_t n = f->q() - 1;
  const Poly one = constant(f, f->one());
  Poly poly = ((one - xpow(f, p.t)).mul_mod(xpow(f, s + p.r)) - xpow(f, p.r) - xpow(f, p.t + p.r)).canonical();
  const Elem m2 = f->from_int(-2);
  CycloMap map(cs, {{m2, xpow(f, p.r + p.t)}, {m2, xpow(f, p.r)}});
  bool pred = false;
  if (!p.corollary) {
    pred = coprime(p.r, n) && coprime(p.t + p.r, s);
  } else {
    const auto g = arith::gcd(p.t + p.r, n);
    pred = coprime(p.r, n) && (g == 1 || (g == 2 && f->q() % 4 == 3));
  }
  return {std::move(poly), std::move(map), pred, !p.corollary, std::nullopt};
}

Built build(const FieldPtr& f, const F4Params& p) {
  auto c = f4_core(f, p.alpha, p.beta, p.theta, p.t);
  return {std::move(c.poly), std::move(c.map), c.predicted, true, std::nullopt};
}

Built build(const FieldPtr& f, const F5Params& p) {
  auto c = f5_core(f, p.alpha, p.beta, p.theta, p.t);
  return {std::move(c.poly), std::move(c.map), c.predicted, true, std::nullopt};
}

Built build(const FieldPtr& f, const F6Params& p) {
  const auto e = [&](std::int64_t v) { return f->from_int(v); };
  const auto pow_i = [&](std::uint64_t base, std::uint64_t k) { return folded_power(base, k, f->q()); };
  const std::uint64_t s = (f->q() - 1) / 2;
  switch (p.preset) {
    case F6Preset::Char2: {
      if (f->p() != 2 || (f->q() - 1) % 3 != 0) domain("char-2 preset needs q = 2^n with n even");
      auto cs = make_cosets(f, 3);
      const std::uint64_t s3 = cs->s();
      const std::uint64_t ri = pow_i(2, p.i);
      const std::uint64_t rj = pow_i(2, p.j);
      Poly poly = literal(f, {{1, 2 * s3 + ri}, {1, 2 * s3 + rj}, {1, s3 + ri}, {1, s3 + rj}, {1, ri}}).canonical();
      auto map = CycloMap::monomial(cs, {ri, rj, rj}, {e(3), e(3), e(3)});
      const bool pred = coprime(ri, s3) && coprime(rj, s3) && rj % 3 != 0;
      return {std::move(poly), std::move(map), pred, true, std::nullopt};
    }
    case F6Preset::ThreeBranchEqual: {
      if ((f->q() - 1) % 3 != 0) domain("three-branch preset needs 3 | q - 1");
      require_size(p.consts.size(), 3, "A");
      require_size(p.exps.size(), 3, "r");
      require_positive(p.exps, "r");
      auto cs = make_cosets(f, 3);
      for (std::size_t i = 0; i < 3; ++i) require_nonzero(p.consts[i], "A_" + std::to_string(i));
      const auto sp = static_cast<std::int64_t>(cs->s());
      if (!(p.consts[0].pow(sp) == p.consts[1].pow(sp)) || !(p.consts[0].pow(sp) == p.consts[2].pow(sp))) {
        domain("A_0^s, A_1^s, A_2^s must coincide");
      }
      Poly poly = three_branch_poly(*cs, p.consts, p.exps);
      std::vector<Elem> scaled;
      for (const auto& a : p.consts) scaled.push_back(a * e(3));
      auto map = CycloMap::monomial(cs, p.exps, scaled);
      const bool pred = all_coprime(p.exps, cs->s()) && p.exps[1] % 3 == p.exps[2] % 3 && p.exps[1] % 3 != 0;
      return {std::move(poly), std::move(map), pred, true, std::nullopt};
    }
    case F6Preset::Hou: {
      require_char3(*f);
      auto c = f4_core(f, e(2), e(1), e(2), 3);
      Poly poly = literal(f, {{1, s + 1}, {-1, s + 2}, {-1, s + 3}, {-1, 0}, {-1, 1}, {1, 2}}).canonical();
      return {std::move(poly), std::move(c.map), f->m() % 2 == 0, false, e(-1)};
    }
    case F6Preset::ZhaHuProp1: {
      require_char3(*f);
      if (!p.theta || !p.beta) domain("ZhaHu preset needs theta and beta");
      require_nonzero(*p.theta, "theta");
      auto c = f4_core(f, e(1), *p.beta, *p.theta, p.t);
      const bool pred = coprime(p.t, f->q() - 1) && eta(*p.theta) == 1 && eta(*p.beta) == 1;
      return {std::move(c.poly), std::move(c.map), pred, false, std::nullopt};
    }
    default:
      break;
  }
  require_char3(*f);
  CubicFamily c{Poly(f), CycloMap::monomial(make_cosets(f, 1), {1}, {f->one()}), false};
  Poly poly(f);
  switch (p.preset) {
    case F6Preset::Cubic3i: {
      const auto t = pow_i(3, p.i);
      c = f4_core(f, e(2), e(2), e(1), t);
      poly = literal(f, {{1, s + t}, {2, s + 3}, {2, s + 2}, {2, s + 1}, {1, t}, {1, 3}, {1, 2}, {1, 1}});
      break;
    }
    case F6Preset::Cubic3Cor:
      c = f4_core(f, e(1), e(1), e(1), 3);
      poly = literal(f, {{1, s + 2}, {1, s + 1}, {1, 3}, {2, 2}, {2, 1}});
      break;
    case F6Preset::Cubic2i: {
      const auto t = pow_i(2, p.i);
      c = f4_core(f, e(2), e(2), e(1), t);
      poly = literal(f, {{1, s + t}, {2, s + 3}, {2, s + 2}, {2, s + 1}, {1, t}, {1, 3}, {1, 2}, {1, 1}});
      break;
    }
    case F6Preset::Cubic2Cor:
      c = f4_core(f, e(1), e(1), e(1), 2);
      poly = literal(f, {{1, s + 3}, {1, s + 1}, {2, 3}, {1, 2}, {2, 1}});
      break;
    case F6Preset::Quad3i: {
      const auto t = pow_i(3, p.i);
      c = f5_core(f, e(1), e(1), e(2), t);
      poly = literal(f, {{1, s + t}, {2, s + 3}, {1, s + 2}, {2, s + 1}, {2, t}, {2, 3}, {1, 2}, {2, 1}});
      break;
    }
    case F6Preset::Quad2i: {
      const auto t = pow_i(2, p.i);
      c = f5_core(f, e(1), e(2), e(2), t);
      poly = literal(f, {{1, s + t}, {1, s + 3}, {2, s + 2}, {1, s + 1}, {2, t}, {1, 3}, {2, 2}, {1, 1}});
      break;
    }
    case F6Preset::Quad2Cor:
      c = f5_core(f, e(1), e(2), e(2), 2);
      poly = literal(f, {{1, s + 3}, {1, s + 1}, {1, 3}, {1, 2}, {1, 1}});
      break;
    default:
      domain("unhandled preset");
  }
  return {poly.canonical(), std::move(c.map), c.predicted, true, std::nullopt};
}

Built build(const FieldPtr& f, const F7Params& p) {
  require_char3(*f);
  require_nonzero(p.alpha, "alpha");
  require_nonzero(p.beta, "beta");
  require_nonzero(p.gammac, "gammac");
  require_nonzero(p.theta, "theta");
  auto cs = make_cosets(f, 2);
  const std::uint64_t s = cs->s();
  const Elem a = p.alpha, b = p.beta, g = p.gammac, t = p.theta;
  Poly poly = Poly::from_terms(f, {{s + 3, b - a},
                                   {s + 2, b * t - a * g},
                                   {s + 1, b * t * t - a * g * g},
                                   {3, -(b + a)},
                                   {2, -(b * t + a * g)},
                                   {1, -(b * t * t + a * g * g)}})
                  .canonical();
  CycloMap map(cs, {{a, cubic(f, g)}, {b, cubic(f, t)}});
  const bool pred = eta(a) == eta(b) && eta(g) == -1 && eta(t) == 1;
  return {std::move(poly), std::move(map), pred, true, std::nullopt};
}

Built build(const FieldPtr& f, const F8Params& p) {
  if ((f->q() - 1) % 3 != 0) domain("family requires 3 | q - 1");
  require_size(p.consts.size(), 3, "A");
  require_size(p.exps.size(), 3, "r");
  require_positive(p.exps, "r");
  auto cs = make_cosets(f, 3);
  const Elem z = cs->zeta();
  const std::uint64_t s = cs->s();
  Poly total(f);
  for (std::uint64_t i = 0; i < 3; ++i) {
    // zeta^i A_i x^(r_i) (x^(2s) + zeta^i x^s + zeta^(2i))
    const Poly sel = Poly::from_terms(f, {{2 * s, f->one()},
                                          {s, z.pow(static_cast<std::int64_t>(i))},
                                          {0, z.pow(static_cast<std::int64_t>(2 * i))}});
    total += (xpow(f, p.exps[i]) * (z.pow(static_cast<std::int64_t>(i)) * p.consts[i])).mul_mod(sel);
  }
  std::vector<Elem> scaled;
  for (const auto& a : p.consts) scaled.push_back(a * f->from_int(3));
  auto map = CycloMap::monomial(cs, p.exps, scaled);
  const auto sp = static_cast<std::int64_t>(s);
  std::set<std::uint32_t> vals;
  for (std::uint64_t i = 0; i < 3; ++i) {
    vals.insert((p.consts[i].pow(sp) * z.pow(static_cast<std::int64_t>(arith::mul_mod(i, p.exps[i], 3)))).code());
  }
  std::set<std::uint32_t> mu;
  for (const auto& w : cs->mu()) mu.insert(w.code());
  const bool pred = all_coprime(p.exps, s) && vals == mu;
  return {total.canonical(), std::move(map), pred, true, std::nullopt};
}

// x (x^s - zeta)(x^s - zeta^2) + x^(r1) (x^s - 1)(x^s - zeta^2) + zeta x^p (x^s - 1)(x^s - zeta)
std::pair<Poly, CycloMap> zha_three_branch(const FieldPtr& f, std::uint64_t r1) {
  auto cs = make_cosets(f, 3);
  const Elem z = cs->zeta();
  const Elem z2 = z * z;
  const Poly xs = xpow(f, cs->s());
  const auto lin = [&](Elem root) { return xs - constant(f, root); };
  const std::uint64_t rp = fold_exponent(f->p(), f->q());
  Poly poly = xpow(f, 1).mul_mod(lin(z)).mul_mod(lin(z2)) + xpow(f, r1).mul_mod(lin(f->one())).mul_mod(lin(z2)) +
              (xpow(f, rp) * z).mul_mod(lin(f->one())).mul_mod(lin(z));
  const Elem three = f->from_int(3);
  auto map = CycloMap::monomial(cs, {1, r1, rp}, {three, three * z2, three * z2});
  return {poly.canonical(), std::move(map)};
}

Built build(const FieldPtr& f, const F9Params&) {
  if ((f->q() - 1) % 3 != 0) domain("family requires 3 | q - 1");
  auto [poly, map] = zha_three_branch(f, 3);
  const std::uint64_t s = (f->q() - 1) / 3;
  const auto pm = f->p() % 3;
  const bool pred = (pm == 1 && s % 3 == 1) || (pm == 2 && s % 3 == 2);
  return {std::move(poly), std::move(map), pred, true, std::nullopt};
}

Built build(const FieldPtr& f, const F10Params& p) {
  if ((f->q() - 1) % 9 != 0) domain("family requires q = 1 (mod 9)");
  if (p.i == 0) domain("i must be positive");
  auto [poly, map] = zha_three_branch(f, folded_power(f->p(), p.i, f->q()));
  const auto pm = f->p() % 3;
  const bool pred = pm == 1 || (p.i % 2 == 1 && pm == 2);
  return {std::move(poly), std::move(map), pred, true, std::nullopt};
}

Built build(const FieldPtr& f, const F11Params& p) {
  if (!arith::is_prime(p.ell)) domain("ell must be prime");
  auto cs = cosets_or_domain(f, p.ell);
  if (p.r0 == 0 || p.r1 == 0) domain("r_0 and r_1 must be positive");
  require_nonzero(p.A0, "A_0");
  require_nonzero(p.A1, "A_1");
  if (p.r1 % p.ell == 0) domain("ell divides r_1");
  const std::uint64_t s = cs->s();
  const std::uint64_t ell = p.ell;
  std::vector<Poly::Term> all, tail;
  for (std::uint64_t k = 0; k < ell; ++k) {
    all.push_back({k * s, f->one()});
    if (k > 0) tail.push_back({k * s, f->one()});
  }
  tail.push_back({0, -f->from_int(static_cast<std::int64_t>(ell - 1))});
  Poly poly = (xpow(f, p.r0) * p.A0).mul_mod(Poly::from_terms(f, all)) -
              (xpow(f, p.r1) * p.A1).mul_mod(Poly::from_terms(f, tail));
  const Elem l = f->from_int(static_cast<std::int64_t>(ell));
  std::vector<std::uint64_t> exps(ell, p.r1);
  std::vector<Elem> consts(ell, l * p.A1);
  exps[0] = p.r0;
  consts[0] = l * p.A0;
  auto map = CycloMap::monomial(cs, exps, consts);
  const auto sp = static_cast<std::int64_t>(s);
  const bool pred = coprime(p.r0, s) && coprime(p.r1, s) && p.A0.pow(sp) == p.A1.pow(sp);
  return {poly.canonical(), std::move(map), pred, true, std::nullopt};
}

Built build(const FieldPtr& f, const F12Params& p) {
  require_nonzero(p.theta, "theta");
  const std::uint64_t n = f->q() - 1;
  const std::uint64_t lg = f->dlog(p.theta);
  const std::uint64_t ell = n / arith::gcd(lg, n);
  if (ell < 2) domain("theta must have order at least 2");
  if (n % (ell * ell) != 0) domain("ell^2 must divide q - 1");
  switch (p.preset) {
    case F12Preset::Mod16:
      if (ell != 4) domain("mod-16 preset needs theta of order 4");
      break;
    case F12Preset::Mod25:
      if (ell != 5) domain("mod-25 preset needs theta of order 5");
      break;
    case F12Preset::ZhaHuThm11:
      if (f->p() % ell != 1) domain("preset needs p = 1 (mod ell)");
      break;
    case F12Preset::General:
      break;
  }
  auto cs = make_cosets(f, ell);
  const std::uint64_t s = cs->s();
  const Poly xs = xpow(f, s);
  Poly poly(f);
  for (std::uint64_t i = 0; i < ell; ++i) {
    Poly term = xpow(f, folded_power(f->p(), i, f->q()));
    for (std::uint64_t j = 0; j < ell; ++j) {
      if (j != i) term = term.mul_mod(xs - constant(f, p.theta.pow(static_cast<std::int64_t>(j))));
    }
    poly += term;
  }
  // theta = zeta^c; coset k carries the summand i = k / c (mod ell).
  const std::uint64_t c = lg / s;
  std::uint64_t cinv = 1;
  while (arith::mul_mod(c, cinv, ell) != 1) ++cinv;
  const Elem l = f->from_int(static_cast<std::int64_t>(ell % f->p()));
  std::vector<std::uint64_t> exps;
  std::vector<Elem> consts;
  for (std::uint64_t k = 0; k < ell; ++k) {
    const std::uint64_t i = arith::mul_mod(k, cinv, ell);
    exps.push_back(folded_power(f->p(), i, f->q()));
    consts.push_back(l * p.theta.pow(static_cast<std::int64_t>(i * (ell - 1))));
  }
  auto map = CycloMap::monomial(cs, exps, consts);
  std::vector<std::uint64_t> prods;
  for (std::uint64_t i = 0; i < ell; ++i) prods.push_back(arith::mul_mod(i, arith::pow_mod(f->p(), i, ell), ell));
  bool pred = residues_of(prods, ell);
  bool iff = true;
  if (p.preset == F12Preset::Mod16 || p.preset == F12Preset::ZhaHuThm11) {
    pred = true;
    iff = false;
  } else if (p.preset == F12Preset::Mod25) {
    pred = f->p() % 5 == 1;
  }
  return {poly.canonical(), std::move(map), pred, iff, std::nullopt};
}

Built build(const FieldPtr& f, const F13Params& p) {
  auto cs = cosets_or_domain(f, p.ell);
  require_size(p.r.size(), p.ell, "r");
  require_size(p.g.size(), p.ell, "g");
  require_positive(p.r, "r");
  const std::uint64_t s = cs->s();
  std::vector<Branch> branches;
  bool nonzero = true;
  for (std::uint64_t i = 0; i < p.ell; ++i) {
    branches.push_back({f->one(), xpow(f, p.r[i]).mul_mod(subst_power(p.g[i], s).pow_mod(p.ell))});
    nonzero = nonzero && !p.g[i].eval(cs->mu()[i]).is_zero();
  }
  CycloMap map(cs, std::move(branches));
  const bool pred = residues_of(index_products(p.r, p.ell), p.ell) && all_coprime(p.r, s) && nonzero;
  return {map_to_poly(map), std::move(map), pred, true, std::nullopt};
}

Built build(const FieldPtr& f, const F14Params& p) {
  auto cs = cosets_or_domain(f, p.ell);
  const auto mprime = subfield_degree(*f, p.q0);
  if (p.q0 % p.ell != 1 % p.ell) domain("q0 must be 1 (mod ell)");
  if (mprime % p.ell != 0) domain("ell must divide m");
  require_size(p.r.size(), p.ell, "r");
  require_size(p.f.size(), p.ell, "f");
  require_positive(p.r, "r");
  const std::uint64_t s = cs->s();
  std::vector<Branch> branches;
  bool nonzero = true;
  for (std::uint64_t i = 0; i < p.ell; ++i) {
    require_subfield_poly(p.f[i], p.q0, "f_" + std::to_string(i));
    branches.push_back({f->one(), xpow(f, p.r[i]).mul_mod(subst_power(p.f[i], s))});
    nonzero = nonzero && !p.f[i].eval(cs->mu()[i]).is_zero();
  }
  CycloMap map(cs, std::move(branches));
  const bool pred = residues_of(index_products(p.r, p.ell), p.ell) && all_coprime(p.r, s) && nonzero;
  return {map_to_poly(map), std::move(map), pred, true, std::nullopt};
}

Built build(const FieldPtr& f, const F15Params& p) {
  auto cs = cosets_or_domain(f, p.ell);
  const auto mprime = subfield_degree(*f, p.q0);
  if (p.q0 % p.ell != 1 % p.ell) domain("q0 must be 1 (mod ell)");
  if (mprime % p.ell != 0) domain("ell must divide m");
  for (const auto* v : {&p.r, &p.k, &p.e, &p.t}) {
    require_size(v->size(), p.ell, "r, k, e, t");
    require_positive(*v, "r, k, e, t");
  }
  const std::uint64_t s = cs->s();
  std::vector<Branch> branches;
  for (std::uint64_t i = 0; i < p.ell; ++i) {
    if (!coprime(p.ell, p.e[i])) domain("gcd(ell, e_i) must be 1");
    const Poly h = subst_power(h_poly(f, p.k[i]), arith::mul_mod(p.e[i], s, f->q() - 1)).pow_mod(p.t[i]);
    branches.push_back({f->one(), xpow(f, p.r[i]).mul_mod(h)});
  }
  CycloMap map(cs, std::move(branches));
  bool pred = residues_of(index_products(p.r, p.ell), p.ell) && all_coprime(p.r, s) && (p.k[0] + 1) % f->p() != 0;
  for (std::uint64_t i = 1; i < p.ell; ++i) pred = pred && arith::mul_mod(i, p.k[i] + 1, p.ell) != 0;
  return {map_to_poly(map), std::move(map), pred, true, std::nullopt};
}

Built build(const FieldPtr& f, const F16Params& p) {
  auto cs = cosets_or_domain(f, p.ell);
  const auto mprime = subfield_degree(*f, p.q0);
  if ((p.q0 + 1) % p.ell != 0) domain("q0 must be -1 (mod ell)");
  if (mprime % 2 != 0) domain("m must be even");
  const std::uint64_t s = cs->s();
  // s/2 as a residue mod ell; for odd s (so odd q and ell) it is s * 2^-1.
  const std::uint64_t half_s = s % 2 == 0 ? (s / 2) % p.ell : arith::mul_mod(s % p.ell, (p.ell + 1) / 2, p.ell);
  for (const auto* v : {&p.r, &p.k, &p.kp, &p.e, &p.t}) {
    require_size(v->size(), p.ell, "r, k, kp, e, t");
    require_positive(*v, "r, k, kp, e, t");
  }
  require_size(p.hhat.size(), p.ell, "hhat");
  const std::uint64_t n = f->q() - 1;
  std::vector<Branch> branches;
  std::vector<std::uint64_t> vals;
  bool nonzero = true;
  for (std::uint64_t i = 0; i < p.ell; ++i) {
    if (!coprime(p.ell, p.e[i])) domain("gcd(ell, e_i) must be 1");
    require_subfield_poly(p.hhat[i], p.q0, "hhat_" + std::to_string(i));
    const std::uint64_t kbar = p.ell / arith::gcd(p.ell, p.k[i]);
    const std::uint64_t es = arith::mul_mod(p.e[i], s, n);
    const Poly lead = subst_power(h_poly(f, p.kp[i]), es).pow_mod(p.t[i]);
    const Poly inner = subst_power(h_poly(f, p.k[i]), es).pow_mod(kbar);
    Poly outer(f);
    const auto hc = p.hhat[i].canonical();
    for (std::int64_t d = hc.degree(); d >= 0; --d) {
      outer = outer.mul_mod(inner) + constant(f, hc.coeff(static_cast<std::uint64_t>(d)));
    }
    branches.push_back({f->one(), xpow(f, p.r[i]).mul_mod(lead).mul_mod(outer)});

    const Elem z = cs->zeta().pow(static_cast<std::int64_t>(arith::mul_mod(i, p.e[i], p.ell)));
    const Elem fz = h_value(z, p.kp[i]).pow(static_cast<std::int64_t>(p.t[i])) *
                    hc.eval(h_value(z, p.k[i]).pow(static_cast<std::int64_t>(kbar)));
    nonzero = nonzero && !fz.is_zero();
    const std::uint64_t shift = arith::mul_mod(arith::mul_mod(p.e[i] % p.ell, p.kp[i] % p.ell, p.ell),
                                               arith::mul_mod(p.t[i] % p.ell, half_s, p.ell), p.ell);
    vals.push_back(arith::mul_mod((p.r[i] + shift) % p.ell, i, p.ell));
  }
  CycloMap map(cs, std::move(branches));
  const bool pred = residues_of(vals, p.ell) && all_coprime(p.r, s) && nonzero;
  return {map_to_poly(map), std::move(map), pred, true, std::nullopt};
}

Built build(const FieldPtr& f, const F17Params& p) {
  const std::uint64_t n = f->q() - 1;
  if (p.ell == 0 || n % (2 * p.ell) != 0) domain("2 ell must divide q - 1");
  auto cs = make_cosets(f, p.ell);
  const std::uint64_t s = cs->s();
  require_size(p.u.size(), p.ell, "u");
  require_size(p.r.size(), p.ell, "r");
  require_size(p.a.size(), p.ell, "a");
  const Elem eta2l = f->exp(static_cast<std::int64_t>(s / 2));
  std::vector<Branch> branches;
  std::vector<std::uint64_t> vals;
  bool pred = true;
  for (std::uint64_t i = 0; i < p.ell; ++i) {
    if (!(p.u[i] > p.r[i] && p.r[i] > 0)) domain("need u_i > r_i > 0");
    if (arith::gcd(p.u[i] - p.r[i], n) != s) domain("gcd(u_i - r_i, q - 1) must equal s");
    require_nonzero(p.a[i], "a_" + std::to_string(i));
    const std::uint64_t e = (p.u[i] - p.r[i]) / s;
    const Elem w = eta2l.pow(static_cast<std::int64_t>(arith::mul_mod(i, e, 2 * p.ell)));
    if (!(w + p.a[i] / w).pow(static_cast<std::int64_t>(s)).is_one()) {
      domain("(eta^(i e_i) + a_i / eta^(i e_i))^s != 1");
    }
    branches.push_back({f->one(), xpow(f, p.u[i]) + xpow(f, p.r[i]) * p.a[i]});
    pred = pred && !(-p.a[i] == cs->zeta().pow(static_cast<std::int64_t>(arith::mul_mod(i, e, p.ell))));
    const std::uint64_t half = arith::mul_mod(arith::mul_mod(e % p.ell, (s / 2) % p.ell, p.ell), i, p.ell);
    vals.push_back((arith::mul_mod(p.r[i] % p.ell, i, p.ell) + half) % p.ell);
  }
  CycloMap map(cs, std::move(branches));
  pred = pred && all_coprime(p.r, s) && residues_of(vals, p.ell);
  return {map_to_poly(map), std::move(map), pred, true, std::nullopt};
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(FamilyId id) { return "F" + std::to_string(static_cast<int>(id)); }

FamilyId parse_family_id(std::string_view text) {
  auto t = text;
  if (!t.empty() && (t.front() == 'F' || t.front() == 'f')) t.remove_prefix(1);
  int v = 0;
  for (char c : t) {
    if (c < '0' || c > '9') throw Error(ErrorCode::ParseError, "unknown family '" + std::string(text) + "'");
    v = v * 10 + (c - '0');
    if (v > 99) break;
  }
  if (t.empty() || v < 1 || v > 17) throw Error(ErrorCode::ParseError, "unknown family '" + std::string(text) + "'");
  return static_cast<FamilyId>(v);
}

namespace {
const std::vector<std::pair<F6Preset, std::string>> kF6Names = {
    {F6Preset::Char2, "char2"},         {F6Preset::Cubic3i, "cubic3i"},       {F6Preset::Cubic3Cor, "cubic3cor"},
    {F6Preset::Cubic2i, "cubic2i"},     {F6Preset::Cubic2Cor, "cubic2cor"},   {F6Preset::Quad3i, "quad3i"},
    {F6Preset::Quad2i, "quad2i"},       {F6Preset::Quad2Cor, "quad2cor"},     {F6Preset::Hou, "hou"},
    {F6Preset::ZhaHuProp1, "zhahu_prop1"}, {F6Preset::ThreeBranchEqual, "three_branch_equal"},
};
const std::vector<std::pair<F12Preset, std::string>> kF12Names = {
    {F12Preset::General, "general"},
    {F12Preset::Mod16, "mod16"},
    {F12Preset::Mod25, "mod25"},
    {F12Preset::ZhaHuThm11, "zhahu_thm11"},
};
}  // namespace

std::string to_string(F6Preset preset) {
  for (const auto& [p, n] : kF6Names) {
    if (p == preset) return n;
  }
  return "?";
}

F6Preset parse_f6_preset(std::string_view text) {
  for (const auto& [p, n] : kF6Names) {
    if (n == text) return p;
  }
  throw Error(ErrorCode::ParseError, "unknown F6 preset '" + std::string(text) + "'");
}

std::string to_string(F12Preset preset) {
  for (const auto& [p, n] : kF12Names) {
    if (p == preset) return n;
  }
  return "?";
}

F12Preset parse_f12_preset(std::string_view text) {
  for (const auto& [p, n] : kF12Names) {
    if (n == text) return p;
  }
  throw Error(ErrorCode::ParseError, "unknown F12 preset '" + std::string(text) + "'");
}

FamilyResult construct_family(const FieldPtr& field, const FamilyParams& params, bool brute) {
  Built b = std::visit([&](const auto& p) { return build(field, p); }, params);
  FamilyResult r{family_of(params), std::move(b.poly), std::move(b.map), b.predicted, b.iff, field->zero(), std::nullopt};
  if (b.offset) {
    r.offset = *b.offset;
  }
  if (brute) r.brute = is_bijection_brute(r.poly);
  return r;
}

FamilyResult construct_family(FamilyId id, const FieldPtr& field, const FamilyParams& params, bool brute) {
  if (family_of(params) != id) {
    throw Error(ErrorCode::InvalidArgument, "parameters belong to " + to_string(family_of(params)) + ", not " + to_string(id));
  }
  return construct_family(field, params, brute);
}

}  // namespace cyclo
