#include "cyclo/mapping.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace cyclo {

namespace {

std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Per-branch sparse data for fast repeated evaluation.
struct BranchTerms {
  std::uint32_t scale;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> terms;  // (exp mod q-1, coeff code)
  std::uint32_t constant;
};

std::vector<BranchTerms> sparse_branches(const CycloMap& m) {
  const std::uint64_t n = m.field().q() - 1;
  std::vector<BranchTerms> out;
  for (const auto& b : m.branches()) {
    BranchTerms bt{b.scale.code(), {}, b.poly.coeff(0).code()};
    for (const auto& t : b.poly.terms()) {
      if (t.exp > 0) bt.terms.emplace_back(t.exp % n, t.coeff.code());
    }
    out.push_back(std::move(bt));
  }
  return out;
}

}  // namespace

CycloMap::CycloMap(CosetsPtr cs, std::vector<Branch> branches) : cs_(std::move(cs)), branches_(std::move(branches)) {
  if (branches_.size() != cs_->ell()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(cs_->ell()) + " branches, got " +
                                                std::to_string(branches_.size()));
  }
  for (const auto& b : branches_) {
    if (b.poly.field_ptr() != cs_->field_ptr()) throw Error(ErrorCode::MixedFields, "branch polynomial over another field");
    cs_->field().check_same(b.scale);
  }
}

CycloMap CycloMap::monomial(CosetsPtr cs, const std::vector<std::uint64_t>& exps, const std::vector<Elem>& consts) {
  if (exps.size() != cs->ell() || consts.size() != cs->ell()) {
    throw Error(ErrorCode::InvalidArgument, "monomial map needs ell exponents and ell constants");
  }
  std::vector<Branch> branches;
  const auto& field = cs->field_ptr();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) throw Error(ErrorCode::InvalidArgument, "monomial exponents must be positive");
    branches.push_back({consts[i], Poly::monomial(field, field->one(), exps[i])});
  }
  return CycloMap(std::move(cs), std::move(branches));
}

Elem CycloMap::eval(Elem x) const {
  cs_->field().check_same(x);
  if (x.is_zero()) return x;
  const auto& b = branches_[cs_->coset_of_code(x.code())];
  return b.scale * b.poly.eval(x);
}

std::vector<std::uint32_t> CycloMap::eval_all() const {
  const Field& f = field();
  const std::uint64_t n = f.q() - 1;
  const std::uint64_t ell = cs_->ell();
  const auto bs = sparse_branches(*this);
  std::vector<std::uint32_t> values(f.q(), 0);
  for (std::uint64_t k = 0; k < n; ++k) {
    const auto& b = bs[k % ell];
    std::uint32_t acc = b.constant;
    for (const auto& [e, c] : b.terms) acc = f.add(acc, f.mul(c, f.exp_code(k * e % n)));
    values[f.exp_code(k)] = f.mul(b.scale, acc);
  }
  return values;
}

std::optional<MonomialBranches> CycloMap::monomial_form() const {
  MonomialBranches out;
  for (const auto& b : branches_) {
    const auto ts = b.poly.terms();
    if (ts.size() != 1 || ts[0].exp == 0) return std::nullopt;
    out.exps.push_back(ts[0].exp);
    out.consts.push_back(b.scale * ts[0].coeff);
  }
  return out;
}

std::string CycloMap::to_string() const {
  std::string out = "ell=" + std::to_string(cs_->ell());
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    out += "\nbranch[" + std::to_string(i) + "]=" + field().format(branches_[i].scale) + " * (" +
           branches_[i].poly.to_string() + ")";
  }
  return out;
}

CycloMap CycloMap::parse(FieldPtr field, std::string_view text) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ';' || text[i] == '\n') {
      const auto item = trim_ws(text.substr(start, i - start));
      if (!item.empty()) items.push_back(item);
      start = i + 1;
    }
  }
  std::optional<std::uint64_t> ell;
  std::vector<std::optional<Branch>> slots;
  std::vector<std::pair<std::uint64_t, std::string_view>> pending;
  for (auto item : items) {
    if (item.substr(0, 4) == "ell=") {
      std::uint64_t v = 0;
      const auto body = trim_ws(item.substr(4));
      const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
      if (res.ec != std::errc() || res.ptr != body.data() + body.size()) throw Error(ErrorCode::ParseError, "bad ell");
      ell = v;
    } else if (item.substr(0, 7) == "branch[") {
      const auto close = item.find(']');
      if (close == std::string_view::npos) throw Error(ErrorCode::ParseError, "unterminated branch index");
      std::uint64_t idx = 0;
      const auto res = std::from_chars(item.data() + 7, item.data() + close, idx);
      if (res.ec != std::errc() || res.ptr != item.data() + close) throw Error(ErrorCode::ParseError, "bad branch index");
      auto rest = trim_ws(item.substr(close + 1));
      if (rest.empty() || rest.front() != '=') throw Error(ErrorCode::ParseError, "expected '=' after branch index");
      pending.emplace_back(idx, trim_ws(rest.substr(1)));
    } else {
      throw Error(ErrorCode::ParseError, "unrecognized map item '" + std::string(item) + "'");
    }
  }
  if (!ell) throw Error(ErrorCode::ParseError, "map text needs ell=<l>");
  auto cs = make_cosets(field, *ell);
  slots.resize(*ell);
  for (const auto& [idx, body] : pending) {
    if (idx >= *ell) throw Error(ErrorCode::ParseError, "branch index out of range");
    if (slots[idx]) throw Error(ErrorCode::ParseError, "duplicate branch " + std::to_string(idx));
    const auto open = body.find('(');
    const auto close = body.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
      throw Error(ErrorCode::ParseError, "branch must read <A> * (<poly>)");
    }
    auto scale_text = trim_ws(body.substr(0, open));
    if (scale_text.empty() || scale_text.back() != '*') throw Error(ErrorCode::ParseError, "branch must read <A> * (<poly>)");
    scale_text = trim_ws(scale_text.substr(0, scale_text.size() - 1));
    if (!trim_ws(body.substr(close + 1)).empty()) throw Error(ErrorCode::ParseError, "trailing text after branch polynomial");
    slots[idx] = Branch{field->parse(scale_text), Poly::parse(field, body.substr(open + 1, close - open - 1))};
  }
  std::vector<Branch> branches;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw Error(ErrorCode::ParseError, "missing branch " + std::to_string(i));
    branches.push_back(std::move(*slots[i]));
  }
  return CycloMap(std::move(cs), std::move(branches));
}

// ---------------------------------------------------------------------------

Poly map_to_poly(const CycloMap& m) {
  const auto& cs = m.cosets();
  const auto& field = cs.field_ptr();
  const std::uint64_t ell = cs.ell();
  const std::uint64_t s = cs.s();
  const Elem ell_elem = field->from_int(static_cast<std::int64_t>(ell % field->p()));
  if (ell_elem.is_zero()) throw Error(ErrorCode::CharacteristicDividesEll, "characteristic divides ell");
  const Elem zeta = cs.zeta();

  Poly total(field);
  for (std::uint64_t i = 0; i < ell; ++i) {
    const auto& b = m.branches()[i];
    if (b.scale.is_zero() || b.poly.is_zero()) continue;
    // x^((ell-1)s) + zeta^i x^((ell-2)s) + ... + zeta^(i(ell-1))
    std::vector<Poly::Term> sel;
    for (std::uint64_t k = 0; k < ell; ++k) {
      sel.push_back({(ell - 1 - k) * s, zeta.pow(static_cast<std::int64_t>(i * k))});
    }
    const Elem factor = b.scale / (ell_elem * zeta.pow(static_cast<std::int64_t>(i * (ell - 1))));
    total += b.poly.mul_mod(Poly::from_terms(field, sel)) * factor;
  }
  return total.canonical();
}

Poly structured_poly(const std::vector<StructuredTerm>& terms, const CosetStructure& cs) {
  Poly total(cs.field_ptr());
  for (const auto& t : terms) total += t.r.mul_mod(t.f.compose_power(cs.s()));
  return total.canonical();
}

CycloMap structured_to_map(const std::vector<StructuredTerm>& terms, CosetsPtr cs) {
  const auto& field = cs->field_ptr();
  Elem at_zero = field->zero();
  for (const auto& t : terms) at_zero += t.r.eval(field->zero()) * t.f.eval(field->zero());
  if (!at_zero.is_zero()) throw Error(ErrorCode::NonzeroAtZero, "structured polynomial does not vanish at 0");
  std::vector<Branch> branches;
  for (std::uint64_t j = 0; j < cs->ell(); ++j) {
    const Elem root = cs->mu()[j];
    Poly branch(field);
    for (const auto& t : terms) branch += t.r * t.f.eval(root);
    branches.push_back({field->one(), branch.canonical()});
  }
  return CycloMap(std::move(cs), std::move(branches));
}

CycloMap poly_to_map(const Poly& p, CosetsPtr cs) {
  const Poly c = p.canonical();
  if (!c.coeff(0).is_zero()) throw Error(ErrorCode::NonzeroAtZero, "polynomial does not vanish at 0");
  const auto& field = cs->field_ptr();
  const std::uint64_t s = cs->s();
  std::vector<std::vector<Poly::Term>> groups(s + 1);
  for (const auto& t : c.terms()) {
    const std::uint64_t k = (t.exp - 1) % s + 1;
    groups[k].push_back({(t.exp - k) / s, t.coeff});
  }
  std::vector<StructuredTerm> terms;
  for (std::uint64_t k = 1; k <= s; ++k) {
    if (groups[k].empty()) continue;
    terms.push_back({Poly::monomial(field, field->one(), k), Poly::from_terms(field, groups[k])});
  }
  return structured_to_map(terms, std::move(cs));
}

// ---------------------------------------------------------------------------

BijectionReport bijection_report(const Field& field, const std::vector<std::uint32_t>& values) {
  const std::uint32_t q = field.q();
  BijectionReport report;
  std::vector<std::int64_t> first(q, -1);
  for (std::uint32_t x = 0; x < q; ++x) {
    const std::uint32_t v = values[x];
    if (first[v] >= 0) {
      if (!report.collision) {
        report.collision = std::make_pair(Elem(&field, static_cast<std::uint32_t>(first[v])), Elem(&field, x));
      }
    } else {
      first[v] = x;
    }
  }
  for (std::uint32_t v = 0; v < q; ++v) {
    if (first[v] < 0) {
      report.missed = Elem(&field, v);
      break;
    }
  }
  report.is_bijection = !report.collision;
  return report;
}

BijectionReport is_bijection_brute(const Poly& p) { return bijection_report(p.field(), p.eval_all()); }

BijectionReport is_bijection_brute(const CycloMap& m) {
  const Field& f = m.field();
  const auto& cs = m.cosets();
  const auto values = m.eval_all();
  BijectionReport report = bijection_report(f, values);
  report.branches_coset_bijective = true;
  const std::uint64_t n = f.q() - 1;
  std::vector<char> seen(f.q(), 0);
  for (std::uint64_t i = 0; i < cs.ell(); ++i) {
    std::set<std::uint64_t> hit;
    bool zero = false;
    bool injective = true;
    std::vector<std::uint32_t> touched;
    for (std::uint64_t k = i; k < n; k += cs.ell()) {
      const std::uint32_t v = values[f.exp_code(k)];
      if (v == 0) {
        zero = true;
        continue;
      }
      if (seen[v]) injective = false;
      seen[v] = 1;
      touched.push_back(v);
      hit.insert(cs.coset_of_code(v));
    }
    for (auto v : touched) seen[v] = 0;
    if (zero) {
      report.coset_images.emplace_back(std::nullopt);
      report.branches_coset_bijective = false;
    } else {
      report.coset_images.emplace_back(std::vector<std::uint64_t>(hit.begin(), hit.end()));
      if (hit.size() != 1 || !injective) report.branches_coset_bijective = false;
    }
  }
  return report;
}

}  // namespace cyclo
