#include "cyclo/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "cyclo/arith.hpp"

namespace cyclo {

std::uint64_t fold_exponent(std::uint64_t e, std::uint32_t q) {
  if (e < q) return e;
  return (e - 1) % (q - 1) + 1;
}

Poly::Poly(FieldPtr field, std::vector<std::uint32_t> codes)
    : field_(std::move(field)), coeffs_(std::move(codes)) {
  for (auto c : coeffs_) {
    if (c >= field_->q()) throw Error(ErrorCode::InvalidArgument, "coefficient code out of range");
  }
  if (coeffs_.size() > kMaxDegree + 1) throw Error(ErrorCode::InvalidArgument, "degree too large");
  trim();
}

Poly Poly::constant(FieldPtr field, Elem c) {
  field->check_same(c);
  Poly p(std::move(field));
  if (!c.is_zero()) p.coeffs_ = {c.code()};
  return p;
}

Poly Poly::monomial(FieldPtr field, Elem c, std::uint64_t exp) {
  field->check_same(c);
  if (exp > kMaxDegree) throw Error(ErrorCode::InvalidArgument, "exponent too large: " + std::to_string(exp));
  Poly p(std::move(field));
  if (!c.is_zero()) {
    p.coeffs_.assign(exp + 1, 0);
    p.coeffs_[exp] = c.code();
  }
  return p;
}

Poly Poly::from_terms(FieldPtr field, const std::vector<Term>& terms) {
  Poly p(field);
  std::uint64_t top = 0;
  for (const auto& t : terms) top = std::max(top, t.exp);
  if (top > kMaxDegree) throw Error(ErrorCode::InvalidArgument, "exponent too large: " + std::to_string(top));
  p.coeffs_.assign(terms.empty() ? 0 : top + 1, 0);
  for (const auto& t : terms) {
    field->check_same(t.coeff);
    p.coeffs_[t.exp] = field->add(p.coeffs_[t.exp], t.coeff.code());
  }
  p.trim();
  return p;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

void Poly::check_same(const Poly& rhs) const {
  if (field_ != rhs.field_) throw Error(ErrorCode::MixedFields, "polynomials over different fields");
}

Elem Poly::coeff(std::uint64_t exp) const {
  if (exp >= coeffs_.size()) return field_->zero();
  return {field_.get(), coeffs_[exp]};
}

Elem Poly::leading() const {
  if (coeffs_.empty()) return field_->zero();
  return {field_.get(), coeffs_.back()};
}

std::vector<Poly::Term> Poly::terms() const {
  std::vector<Term> out;
  for (std::size_t e = 0; e < coeffs_.size(); ++e) {
    if (coeffs_[e] != 0) out.push_back({e, {field_.get(), coeffs_[e]}});
  }
  return out;
}

std::size_t Poly::term_count() const {
  return static_cast<std::size_t>(std::count_if(coeffs_.begin(), coeffs_.end(), [](auto c) { return c != 0; }));
}

Poly Poly::operator+(const Poly& rhs) const {
  check_same(rhs);
  Poly out(field_);
  out.coeffs_.assign(std::max(coeffs_.size(), rhs.coeffs_.size()), 0);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) {
    const std::uint32_t a = i < coeffs_.size() ? coeffs_[i] : 0;
    const std::uint32_t b = i < rhs.coeffs_.size() ? rhs.coeffs_[i] : 0;
    out.coeffs_[i] = field_->add(a, b);
  }
  out.trim();
  return out;
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& c : out.coeffs_) c = field_->neg(c);
  return out;
}

Poly Poly::operator-(const Poly& rhs) const { return *this + (-rhs); }

Poly Poly::operator*(Elem c) const {
  field_->check_same(c);
  Poly out(*this);
  for (auto& v : out.coeffs_) v = field_->mul(v, c.code());
  out.trim();
  return out;
}

Poly Poly::operator*(const Poly& rhs) const {
  check_same(rhs);
  Poly out(field_);
  if (is_zero() || rhs.is_zero()) return out;
  if (coeffs_.size() + rhs.coeffs_.size() - 2 > kMaxDegree) {
    throw Error(ErrorCode::InvalidArgument, "product degree too large");
  }
  out.coeffs_.assign(coeffs_.size() + rhs.coeffs_.size() - 1, 0);
  const auto rt = rhs.terms();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (const auto& t : rt) {
      auto& slot = out.coeffs_[i + t.exp];
      slot = field_->add(slot, field_->mul(coeffs_[i], t.coeff.code()));
    }
  }
  out.trim();
  return out;
}

Poly Poly::mul_mod(const Poly& rhs) const {
  check_same(rhs);
  const std::uint32_t q = field_->q();
  Poly out(field_);
  if (is_zero() || rhs.is_zero()) return out;
  out.coeffs_.assign(q, 0);
  const auto lt = terms();
  const auto rt = rhs.terms();
  for (const auto& a : lt) {
    for (const auto& b : rt) {
      auto& slot = out.coeffs_[fold_exponent(a.exp + b.exp, q)];
      slot = field_->add(slot, field_->mul(a.coeff.code(), b.coeff.code()));
    }
  }
  out.trim();
  return out;
}

Poly Poly::pow_mod(std::uint64_t k) const {
  Poly result = constant(field_, field_->one());
  Poly base = canonical();
  while (k > 0) {
    if (k & 1U) result = result.mul_mod(base);
    k >>= 1U;
    if (k > 0) base = base.mul_mod(base);
  }
  return result;
}

Poly Poly::compose_power(std::uint64_t s) const {
  std::vector<Term> out;
  for (const auto& t : terms()) out.push_back({t.exp * s, t.coeff});
  return from_terms(field_, out);
}

Poly Poly::canonical() const {
  const std::uint32_t q = field_->q();
  if (is_canonical()) return *this;
  Poly out(field_);
  out.coeffs_.assign(q, 0);
  for (std::size_t e = 0; e < coeffs_.size(); ++e) {
    if (coeffs_[e] == 0) continue;
    auto& slot = out.coeffs_[fold_exponent(e, q)];
    slot = field_->add(slot, coeffs_[e]);
  }
  out.trim();
  return out;
}

Elem Poly::eval(Elem x) const {
  field_->check_same(x);
  const Field& f = *field_;
  if (x.is_zero()) return coeff(0);
  const std::uint64_t n = f.q() - 1;
  const std::uint64_t lx = f.log_code(x.code());
  std::uint32_t acc = 0;
  for (std::size_t e = 0; e < coeffs_.size(); ++e) {
    if (coeffs_[e] == 0) continue;
    const std::uint32_t power = f.exp_code(lx * (e % n) % n);
    acc = f.add(acc, f.mul(coeffs_[e], power));
  }
  return {field_.get(), acc};
}

std::vector<std::uint32_t> Poly::eval_all() const {
  const Field& f = *field_;
  const std::uint32_t q = f.q();
  const std::uint64_t n = q - 1;
  std::vector<std::uint32_t> values(q, 0);
  values[0] = coeff(0).code();
  const auto ts = terms();
  std::vector<std::uint64_t> step(ts.size());
  std::vector<std::uint64_t> pos(ts.size(), 0);
  for (std::size_t j = 0; j < ts.size(); ++j) step[j] = ts[j].exp % n;
  for (std::uint64_t k = 0; k < n; ++k) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < ts.size(); ++j) {
      acc = f.add(acc, f.mul(ts[j].coeff.code(), f.exp_code(pos[j])));
      pos[j] += step[j];
      if (pos[j] >= n) pos[j] -= n;
    }
    values[f.exp_code(k)] = acc;
  }
  return values;
}

Elem eval(const Poly& p, Elem x) { return p.eval(x); }

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t e = coeffs_.size(); e-- > 0;) {
    if (coeffs_[e] == 0) continue;
    if (!out.empty()) out += " + ";
    const Elem c{field_.get(), coeffs_[e]};
    if (e == 0) {
      out += field_->format(c);
      continue;
    }
    if (!c.is_one()) out += field_->format(c) + "*";
    out += "x";
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

namespace {

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  }
  return out;
}

}  // namespace

Poly Poly::parse(FieldPtr field, std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty polynomial");
  std::vector<Term> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (i != 0) {
      throw Error(ErrorCode::ParseError, "expected '+' between terms");
    }
    // a term runs to the next '+' or '-' that is not an exponent sign
    std::size_t j = i;
    while (j < s.size() && !((s[j] == '+' || s[j] == '-') && j > i && s[j - 1] != '^')) ++j;
    const std::string_view term(s.data() + i, j - i);
    if (term.empty()) throw Error(ErrorCode::ParseError, "empty term");
    Elem coeff = field->one();
    std::uint64_t exp = 0;
    const auto xpos = term.find('x');
    if (xpos == std::string_view::npos) {
      coeff = field->parse(term);
    } else {
      std::string_view prefix = term.substr(0, xpos);
      if (!prefix.empty()) {
        if (prefix.back() != '*') throw Error(ErrorCode::ParseError, "expected '*' before x in '" + std::string(term) + "'");
        prefix.remove_suffix(1);
        coeff = field->parse(prefix);
      }
      const std::string_view suffix = term.substr(xpos + 1);
      if (suffix.empty()) {
        exp = 1;
      } else {
        if (suffix.size() < 2 || suffix[0] != '^') throw Error(ErrorCode::ParseError, "bad exponent in '" + std::string(term) + "'");
        const auto res = std::from_chars(suffix.data() + 1, suffix.data() + suffix.size(), exp);
        if (res.ec != std::errc() || res.ptr != suffix.data() + suffix.size()) {
          throw Error(ErrorCode::ParseError, "bad exponent in '" + std::string(term) + "'");
        }
      }
    }
    if (negative) coeff = -coeff;
    if (exp > kMaxDegree) throw Error(ErrorCode::ParseError, "exponent too large in '" + std::string(term) + "'");
    terms.push_back({exp, coeff});
    i = j;
  }
  return from_terms(std::move(field), terms);
}

// ---------------------------------------------------------------------------

Poly IndexForm::f(const FieldPtr& field) const { return Poly::from_terms(field, f_terms); }

Poly IndexForm::reconstruct(const FieldPtr& field) const {
  std::vector<Poly::Term> shifted;
  for (const auto& t : f_terms) shifted.push_back({t.exp * s + r, t.coeff * a});
  return (Poly::from_terms(field, shifted) + Poly::constant(field, b)).canonical();
}

IndexForm index_of(const Poly& input) {
  const Poly p = input.canonical();
  const std::uint64_t n = p.field().q() - 1;
  IndexForm form;
  form.b = p.coeff(0);
  std::vector<Poly::Term> ts;
  for (const auto& t : p.terms()) {
    if (t.exp > 0) ts.push_back(t);
  }
  if (ts.empty()) throw Error(ErrorCode::ConstantPolynomial, "index of a constant polynomial");
  form.r = ts.front().exp;
  form.a = ts.back().coeff;
  std::uint64_t g = n;
  for (const auto& t : ts) g = arith::gcd(g, t.exp - form.r);
  form.s = g;
  form.ell = n / g;
  const Elem a_inv = form.a.inv();
  for (const auto& t : ts) form.f_terms.push_back({(t.exp - form.r) / g, t.coeff * a_inv});
  return form;
}

}  // namespace cyclo
