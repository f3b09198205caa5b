#include "cyclo/criteria.hpp"

#include <algorithm>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "cyclo/arith.hpp"

namespace cyclo {

namespace {

void require_nonzero(const MonomialMapSpec& spec) {
  for (std::size_t i = 0; i < spec.consts.size(); ++i) {
    if (spec.consts[i].is_zero()) throw Error(ErrorCode::ZeroConstant, "A_" + std::to_string(i) + " is zero");
  }
}

// First index with gcd(r_i, s) > 1.
std::optional<std::size_t> first_gcd_failure(const MonomialMapSpec& spec) {
  for (std::size_t i = 0; i < spec.exps.size(); ++i) {
    if (arith::gcd(spec.exps[i], spec.cs->s()) != 1) return i;
  }
  return std::nullopt;
}

std::string gcd_witness(const MonomialMapSpec& spec, std::size_t i) {
  return "gcd(r_" + std::to_string(i) + ", s) = gcd(" + std::to_string(spec.exps[i]) + ", " +
         std::to_string(spec.cs->s()) + ") = " + std::to_string(arith::gcd(spec.exps[i], spec.cs->s()));
}

std::uint64_t mod_ell(std::uint64_t v, std::uint64_t ell) { return v % ell; }

// Exhaustive evaluation of x -> A_i x^(r_i); returns the first collision in
// code order, if any.
std::optional<std::pair<std::uint32_t, std::uint32_t>> cond_a_collision(const MonomialMapSpec& spec) {
  const auto& cs = *spec.cs;
  const Field& f = cs.field();
  const std::uint64_t n = f.q() - 1;
  std::vector<std::uint32_t> first(f.q(), 0);  // 1 + preimage code
  first[0] = 1;
  for (std::uint32_t x = 1; x < f.q(); ++x) {
    const std::uint32_t i = cs.coset_of_code(x);
    const std::uint64_t e = (std::uint64_t{f.log_code(x)} * (spec.exps[i] % n)) % n;
    const std::uint32_t y = f.mul(spec.consts[i].code(), f.exp_code(e));
    if (first[y]) return std::pair{first[y] - 1, x};
    first[y] = x + 1;
  }
  return std::nullopt;
}

// A_i C_{i r_i} as explicit element sets, compared pairwise.
bool cond_b(const MonomialMapSpec& spec) {
  const auto& cs = *spec.cs;
  const Field& f = cs.field();
  std::set<std::vector<std::uint32_t>> images;
  for (std::uint64_t i = 0; i < cs.ell(); ++i) {
    const std::uint64_t target = mod_ell(i * spec.exps[i], cs.ell());
    std::vector<std::uint32_t> img;
    img.reserve(cs.s());
    for (const Elem& y : cs.members(target)) img.push_back(f.mul(spec.consts[i].code(), y.code()));
    std::sort(img.begin(), img.end());
    if (!images.insert(std::move(img)).second) return false;
  }
  return true;
}

// ind(A_i / A_j) != r_j j - r_i i (mod ell) over ordered pairs (i, j).
bool cond_c(const MonomialMapSpec& spec, bool reversed) {
  const auto& cs = *spec.cs;
  const Field& f = cs.field();
  const std::uint64_t ell = cs.ell();
  for (std::uint64_t i = 0; i < ell; ++i) {
    for (std::uint64_t j = i + 1; j < ell; ++j) {
      const auto a = reversed ? j : i;
      const auto b = reversed ? i : j;
      const std::uint64_t ind = f.dlog(spec.consts[a] / spec.consts[b]) % ell;
      const std::int64_t rhs = static_cast<std::int64_t>(mod_ell(spec.exps[b] * b, ell)) -
                               static_cast<std::int64_t>(mod_ell(spec.exps[a] * a, ell));
      if (ind == arith::mod(rhs, ell)) return false;
    }
  }
  return true;
}

// A_i gamma^(i r_i) pairwise in distinct cosets of C_0.
bool cond_d(const MonomialMapSpec& spec) {
  const auto& cs = *spec.cs;
  const Field& f = cs.field();
  std::vector<Elem> reps;
  for (std::uint64_t i = 0; i < cs.ell(); ++i) {
    reps.push_back(spec.consts[i] * f.exp(static_cast<std::int64_t>(arith::mul_mod(i, spec.exps[i], f.q() - 1))));
  }
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if ((reps[i] / reps[j]).pow(static_cast<std::int64_t>(cs.s())).is_one()) return false;
    }
  }
  return true;
}

// {A_i^s zeta^(i r_i)} == mu_ell as sets.
bool cond_e(const MonomialMapSpec& spec) {
  const auto& cs = *spec.cs;
  std::set<std::uint32_t> got;
  for (std::uint64_t i = 0; i < cs.ell(); ++i) {
    const Elem v = spec.consts[i].pow(static_cast<std::int64_t>(cs.s())) *
                   cs.zeta().pow(static_cast<std::int64_t>(mod_ell(i * spec.exps[i], cs.ell())));
    got.insert(v.code());
  }
  std::set<std::uint32_t> mu;
  for (const Elem& z : cs.mu()) mu.insert(z.code());
  return got == mu;
}

// sum_i zeta^(c r_i i) A_i^(cs) == 0 for c = 1..ell-1.
bool cond_f(const MonomialMapSpec& spec) {
  const auto& cs = *spec.cs;
  const Field& f = cs.field();
  const std::uint64_t ell = cs.ell();
  for (std::uint64_t c = 1; c < ell; ++c) {
    Elem sum = f.zero();
    for (std::uint64_t i = 0; i < ell; ++i) {
      const std::uint64_t e = mod_ell(c * mod_ell(spec.exps[i] * i, ell), ell);
      sum += cs.zeta().pow(static_cast<std::int64_t>(e)) * spec.consts[i].pow(static_cast<std::int64_t>(c * cs.s()));
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

}  // namespace

bool Verdict::condition(std::string_view label) const {
  for (const auto& [name, value] : conditions) {
    if (name == label) return value;
  }
  throw Error(ErrorCode::InvalidArgument, "no condition '" + std::string(label) + "'");
}

std::string Verdict::to_json() const {
  nlohmann::ordered_json j;
  j["is_pp"] = is_pp;
  j["conditions"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : conditions) j["conditions"][name] = value;
  j["witness"] = witness ? nlohmann::ordered_json(*witness) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

void MonomialMapSpec::validate() const {
  if (!cs) throw Error(ErrorCode::InvalidArgument, "spec has no coset structure");
  const auto ell = cs->ell();
  if (exps.size() != ell || consts.size() != ell) {
    throw Error(ErrorCode::InvalidArgument, "spec needs exactly ell exponents and constants");
  }
  for (auto e : exps) {
    if (e == 0) throw Error(ErrorCode::InvalidArgument, "exponents must be positive");
  }
  for (const auto& c : consts) cs->field().check_same(c);
  if (t) {
    if (t->size() != ell) throw Error(ErrorCode::InvalidArgument, "t needs ell entries");
    for (std::size_t i = 0; i < ell; ++i) {
      if (!(consts[i].pow(static_cast<std::int64_t>(cs->s())) ==
            cs->zeta().pow(static_cast<std::int64_t>((*t)[i] % ell)))) {
        throw Error(ErrorCode::InvalidArgument, "A_" + std::to_string(i) + "^s != zeta^t_" + std::to_string(i));
      }
    }
  }
}

std::optional<MonomialMapSpec> monomial_spec(const CycloMap& m) {
  const auto form = m.monomial_form();
  if (!form) return std::nullopt;
  return MonomialMapSpec{m.cosets_ptr(), form->exps, form->consts, std::nullopt};
}

Verdict check_main2(const MonomialMapSpec& spec) {
  spec.validate();
  require_nonzero(spec);
  const auto& cs = *spec.cs;
  Verdict v;
  const auto bad = first_gcd_failure(spec);
  v.conditions.emplace_back("gcd", !bad);
  if (bad) v.witness = gcd_witness(spec, *bad);

  std::map<std::uint32_t, std::uint64_t> seen;
  bool distinct = true;
  for (std::uint64_t i = 0; i < cs.ell() && distinct; ++i) {
    const Elem val = spec.consts[i].pow(static_cast<std::int64_t>(cs.s())) *
                     cs.zeta().pow(static_cast<std::int64_t>(arith::mul_mod(spec.exps[i], i, cs.ell())));
    const auto [it, fresh] = seen.emplace(val.code(), i);
    if (!fresh) {
      distinct = false;
      if (!v.witness) {
        v.witness = "A_i^s zeta^(r_i i) coincide for i = " + std::to_string(it->second) + " and i' = " + std::to_string(i);
      }
    }
  }
  v.conditions.emplace_back("distinct", distinct);
  v.is_pp = !bad && distinct;
  return v;
}

Verdict check_main_all(const MonomialMapSpec& spec) {
  spec.validate();
  require_nonzero(spec);
  if (const auto bad = first_gcd_failure(spec)) {
    throw Error(ErrorCode::PreconditionViolated, gcd_witness(spec, *bad));
  }
  Verdict v;
  const auto collision = cond_a_collision(spec);
  v.conditions = {
      {"a", !collision},         {"b", cond_b(spec)}, {"c", cond_c(spec, false)},
      {"c_symmetric", cond_c(spec, true)}, {"d", cond_d(spec)}, {"e", cond_e(spec)},
      {"f", cond_f(spec)},
  };
  v.is_pp = v.conditions.front().second;
  const bool agree = std::all_of(v.conditions.begin(), v.conditions.end(),
                                 [&](const auto& c) { return c.second == v.is_pp; });
  if (!agree) {
    std::string w = "conditions disagree:";
    for (const auto& [name, value] : v.conditions) w += " " + name + "=" + (value ? "true" : "false");
    v.witness = w;
  } else if (collision) {
    const Field& f = spec.cs->field();
    v.witness = "f(" + f.format(f.elem(collision->first)) + ") = f(" + f.format(f.elem(collision->second)) + ")";
  }
  return v;
}

Verdict check_special_main(const MonomialMapSpec& spec, const std::vector<std::int64_t>& n) {
  spec.validate();
  require_nonzero(spec);
  const auto& cs = *spec.cs;
  const std::uint64_t ell = cs.ell();
  if (n.size() != ell) throw Error(ErrorCode::InvalidArgument, "n needs ell entries");
  const auto s = static_cast<std::int64_t>(cs.s());
  const Elem common = spec.consts[0].pow(s) / cs.zeta().pow(static_cast<std::int64_t>(arith::mod(n[0], ell)));
  for (std::uint64_t i = 0; i < ell; ++i) {
    if (!(spec.consts[i].pow(s) == common * cs.zeta().pow(static_cast<std::int64_t>(arith::mod(n[i], ell))))) {
      throw Error(ErrorCode::InconsistentNormalization,
                  "A_" + std::to_string(i) + "^s != A zeta^n_" + std::to_string(i));
    }
  }
  Verdict v;
  const auto bad = first_gcd_failure(spec);
  v.conditions.emplace_back("gcd", !bad);
  if (bad) v.witness = gcd_witness(spec, *bad);
  std::vector<std::int64_t> vals;
  for (std::uint64_t i = 0; i < ell; ++i) {
    vals.push_back(static_cast<std::int64_t>(arith::mul_mod(i, spec.exps[i], ell)) + arith::mod(n[i], ell));
  }
  const bool complete = complete_residues(vals, ell);
  v.conditions.emplace_back("residues", complete);
  if (!complete && !v.witness) v.witness = "{i r_i + n_i} is not a complete residue system";
  v.is_pp = !bad && complete;
  return v;
}

bool complete_residues(const std::vector<std::int64_t>& vals, std::uint64_t ell) {
  if (ell == 0) throw Error(ErrorCode::InvalidArgument, "ell must be positive");
  if (vals.size() != ell) return false;
  std::vector<char> hit(ell, 0);
  for (auto v : vals) {
    const auto r = arith::mod(v, ell);
    if (hit[r]) return false;
    hit[r] = 1;
  }
  return true;
}

Construction construct_from_data(CosetsPtr cs, const std::vector<std::uint64_t>& exps, const std::vector<Elem>& consts) {
  MonomialMapSpec spec{std::move(cs), exps, consts, std::nullopt};
  auto verdict = check_main2(spec);
  auto map = spec.to_map();
  auto poly = map_to_poly(map);
  return {std::move(poly), std::move(map), std::move(verdict)};
}

}  // namespace cyclo
