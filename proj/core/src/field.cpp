#include "cyclo/field.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "cyclo/arith.hpp"

namespace cyclo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::LogOfZero: return "LogOfZero";
    case ErrorCode::ConstantPolynomial: return "ConstantPolynomial";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::ZeroHasNoCoset: return "ZeroHasNoCoset";
    case ErrorCode::EvenCharacteristicField: return "EvenCharacteristicField";
    case ErrorCode::CharacteristicDividesEll: return "CharacteristicDividesEll";
    case ErrorCode::NonzeroAtZero: return "NonzeroAtZero";
    case ErrorCode::ZeroConstant: return "ZeroConstant";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InconsistentNormalization: return "InconsistentNormalization";
    case ErrorCode::DomainCheckFailed: return "DomainCheckFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

// Dense polynomials over GF(p), low degree first, used only while setting up a
// field (irreducibility, primitive element search, basis images).
using PPoly = std::vector<std::uint64_t>;

void trim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly poly_rem(PPoly a, const PPoly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = arith::pow_mod(f.back(), p - 2, p);
  while (a.size() > df) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
    }
    trim(a);
  }
  return a;
}

PPoly poly_mulmod(const PPoly& a, const PPoly& b, const PPoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  PPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_rem(std::move(out), f, p);
}

PPoly poly_powmod(PPoly base, std::uint64_t e, const PPoly& f, std::uint64_t p) {
  PPoly result{1};
  base = poly_rem(std::move(base), f, p);
  while (e > 0) {
    if (e & 1U) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1U;
  }
  return poly_rem(std::move(result), f, p);
}

PPoly poly_gcd(PPoly a, PPoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PPoly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f by k successive p-th powers.
PPoly frobenius_x(std::uint64_t k, const PPoly& f, std::uint64_t p) {
  PPoly r = poly_rem(PPoly{0, 1}, f, p);
  for (std::uint64_t i = 0; i < k; ++i) r = poly_powmod(r, p, f, p);
  return r;
}

std::vector<std::uint32_t> code_to_digits(std::uint32_t code, std::uint32_t p, std::uint32_t m) {
  std::vector<std::uint32_t> d(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

std::uint32_t digits_to_code(std::span<const std::uint64_t> d, std::uint32_t p, std::uint32_t m) {
  std::uint64_t code = 0;
  for (std::uint32_t i = m; i-- > 0;) {
    code = code * p + (i < d.size() ? d[i] : 0);
  }
  return static_cast<std::uint32_t>(code);
}

std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim_ws(s);
  if (s.empty()) return false;
  const auto* first = s.data();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

namespace gf {

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  PPoly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::uint64_t m = f.size() - 1;
  if (m == 1) return true;
  // normalize to monic so the Frobenius test is well-defined
  const std::uint64_t lead_inv = arith::pow_mod(f.back(), p - 2, p);
  for (auto& c : f) c = c * lead_inv % p;
  const PPoly x = PPoly{0, 1};
  if (frobenius_x(m, f, p) != x) return false;
  for (std::uint64_t r : arith::prime_factors(m)) {
    PPoly h = frobenius_x(m / r, f, p);
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    if (h.empty()) return false;
    if (poly_gcd(h, f, p).size() != 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t m) {
  // counter[0] is the most significant position: c_0 is compared first
  std::vector<std::uint32_t> coeffs(m + 1, 0);
  coeffs[m] = 1;
  // for m > 1 a zero constant term means x divides the candidate
  if (m > 1) coeffs[0] = 1;
  while (true) {
    if (is_irreducible(coeffs, p)) return coeffs;
    std::uint32_t i = m;
    while (i-- > 0) {
      if (++coeffs[i] < p) break;
      coeffs[i] = 0;
    }
    if (i == static_cast<std::uint32_t>(-1)) break;
  }
  throw Error(ErrorCode::Reducible, "no irreducible polynomial found");
}

}  // namespace gf

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> Elem::coeffs() const {
  return code_to_digits(code_, field_->p(), field_->m());
}

Elem Elem::operator+(Elem rhs) const {
  field_->check_same(rhs);
  return {field_, field_->add(code_, rhs.code_)};
}

Elem Elem::operator-(Elem rhs) const {
  field_->check_same(rhs);
  return {field_, field_->sub(code_, rhs.code_)};
}

Elem Elem::operator*(Elem rhs) const {
  field_->check_same(rhs);
  return {field_, field_->mul(code_, rhs.code_)};
}

Elem Elem::operator/(Elem rhs) const {
  field_->check_same(rhs);
  return {field_, field_->mul(code_, field_->inv(rhs.code_))};
}

Elem Elem::operator-() const { return {field_, field_->neg(code_)}; }

Elem Elem::inv() const { return {field_, field_->inv(code_)}; }

Elem Elem::pow(std::int64_t k) const { return {field_, field_->pow(code_, k)}; }

// ---------------------------------------------------------------------------

Field::Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), q_(static_cast<std::uint32_t>(arith::ipow_bounded(p, m, kMaxOrder))),
      modulus_(std::move(modulus)) {
  build_tables();
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t m,
                     std::optional<std::vector<std::uint32_t>> modulus) {
  if (!arith::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "extension degree must be >= 1");
  if (arith::ipow_bounded(p, m, kMaxOrder) == 0) {
    throw Error(ErrorCode::FieldTooLarge, "q = " + std::to_string(p) + "^" + std::to_string(m) +
                                              " exceeds 2^22");
  }
  std::vector<std::uint32_t> mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != m + 1 || mod.back() != 1) {
      throw Error(ErrorCode::InvalidArgument, "modulus must be monic of degree " + std::to_string(m));
    }
    for (auto c : mod) {
      if (c >= p) throw Error(ErrorCode::InvalidArgument, "modulus coefficient out of range");
    }
    if (!gf::is_irreducible(mod, p)) throw Error(ErrorCode::Reducible, "supplied modulus factors over GF(p)");
  } else {
    mod = gf::smallest_irreducible(p, m);
  }
  return FieldPtr(new Field(p, m, std::move(mod)));
}

void Field::build_tables() {
  const std::uint64_t n = q_ - 1;
  const PPoly f(modulus_.begin(), modulus_.end());
  const auto factors = arith::prime_factors(n);

  // canonical primitive element: smallest code of order exactly q - 1
  auto has_full_order = [&](std::uint32_t code) {
    if (m_ == 1) {
      for (auto r : factors) {
        if (arith::pow_mod(code, n / r, p_) == 1) return false;
      }
      return true;
    }
    const auto d = code_to_digits(code, p_, m_);
    const PPoly g(d.begin(), d.end());
    for (auto r : factors) {
      if (poly_powmod(g, n / r, f, p_) == PPoly{1}) return false;
    }
    return true;
  };
  gamma_ = 0;
  for (std::uint32_t c = 1; c < q_; ++c) {
    if (has_full_order(c)) {
      gamma_ = c;
      break;
    }
  }
  if (q_ == 2) gamma_ = 1;

  exp2_.assign(2 * n, 0);
  log_.assign(q_, kNoLog);
  if (m_ == 1) {
    std::uint64_t cur = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
      exp2_[k] = static_cast<std::uint32_t>(cur);
      cur = cur * gamma_ % p_;
    }
  } else {
    // images gamma * x^j of the power basis make multiplication by gamma linear
    const auto gd = code_to_digits(gamma_, p_, m_);
    const PPoly g(gd.begin(), gd.end());
    std::vector<std::vector<std::uint32_t>> images(m_);
    std::vector<std::uint32_t> image_codes(m_);
    for (std::uint32_t j = 0; j < m_; ++j) {
      PPoly xj(j + 1, 0);
      xj[j] = 1;
      PPoly prod = poly_mulmod(g, xj, f, p_);
      image_codes[j] = digits_to_code(prod, p_, m_);
      images[j] = code_to_digits(image_codes[j], p_, m_);
    }
    if (p_ == 2) {
      std::uint32_t cur = 1;
      for (std::uint64_t k = 0; k < n; ++k) {
        exp2_[k] = cur;
        std::uint32_t next = 0;
        for (std::uint32_t j = 0; j < m_; ++j) {
          if ((cur >> j) & 1U) next ^= image_codes[j];
        }
        cur = next;
      }
    } else {
      std::vector<std::uint32_t> cur(m_, 0), next(m_);
      cur[0] = 1;
      for (std::uint64_t k = 0; k < n; ++k) {
        std::uint64_t code = 0;
        for (std::uint32_t i = m_; i-- > 0;) code = code * p_ + cur[i];
        exp2_[k] = static_cast<std::uint32_t>(code);
        std::fill(next.begin(), next.end(), 0);
        for (std::uint32_t j = 0; j < m_; ++j) {
          if (cur[j] == 0) continue;
          for (std::uint32_t i = 0; i < m_; ++i) next[i] += cur[j] * images[j][i];
        }
        for (std::uint32_t i = 0; i < m_; ++i) cur[i] = next[i] % p_;
      }
    }
  }
  for (std::uint64_t k = 0; k < n; ++k) {
    exp2_[n + k] = exp2_[k];
    log_[exp2_[k]] = static_cast<std::uint32_t>(k);
  }

  if (p_ != 2 && m_ > 1) {
    zech_.assign(n, kNoLog);
    for (std::uint64_t k = 0; k < n; ++k) {
      const std::uint32_t c = exp2_[k];
      const std::uint32_t d0 = c % p_;
      const std::uint32_t shifted = c - d0 + (d0 + 1) % p_;
      zech_[k] = shifted == 0 ? kNoLog : log_[shifted];
    }
  }
}

FieldPtr Field::from_descriptor(std::string_view text) {
  std::int64_t p = -1;
  std::int64_t m = -1;
  std::optional<std::vector<std::uint32_t>> mod;
  std::string_view rest = trim_ws(text);
  while (!rest.empty()) {
    std::size_t end = 0;
    if (rest.substr(0, 4) == "mod=") {
      end = rest.find(']');
      if (end == std::string_view::npos) throw Error(ErrorCode::ParseError, "unterminated modulus list");
      ++end;
    } else {
      end = rest.find(',');
      if (end == std::string_view::npos) end = rest.size();
    }
    const std::string_view item = trim_ws(rest.substr(0, end));
    rest = end < rest.size() ? rest.substr(end) : std::string_view{};
    if (!rest.empty() && rest.front() == ',') rest.remove_prefix(1);
    rest = trim_ws(rest);

    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorCode::ParseError, "expected key=value in field descriptor");
    const auto key = trim_ws(item.substr(0, eq));
    const auto value = trim_ws(item.substr(eq + 1));
    if (key == "p") {
      if (!parse_int(value, p) || p < 2) throw Error(ErrorCode::ParseError, "bad p");
    } else if (key == "m") {
      if (!parse_int(value, m) || m < 1) throw Error(ErrorCode::ParseError, "bad m");
    } else if (key == "mod") {
      if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
        throw Error(ErrorCode::ParseError, "modulus must be written [c0,c1,...,1]");
      }
      std::vector<std::uint32_t> coeffs;
      std::string_view body = value.substr(1, value.size() - 2);
      while (!body.empty()) {
        const auto comma = body.find(',');
        std::int64_t c = 0;
        if (!parse_int(body.substr(0, comma), c) || c < 0) throw Error(ErrorCode::ParseError, "bad modulus coefficient");
        coeffs.push_back(static_cast<std::uint32_t>(c));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
      }
      mod = std::move(coeffs);
    } else {
      throw Error(ErrorCode::ParseError, "unknown field descriptor key '" + std::string(key) + "'");
    }
  }
  if (p < 0) throw Error(ErrorCode::ParseError, "field descriptor needs p");
  if (m < 0) m = mod ? static_cast<std::int64_t>(mod->size()) - 1 : 1;
  if (p > 0xFFFFFFFFLL || m > 64) throw Error(ErrorCode::FieldTooLarge, "field parameters out of range");
  return make(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m), std::move(mod));
}

Elem Field::elem(std::uint32_t code) const {
  if (code >= q_) throw Error(ErrorCode::InvalidArgument, "element code out of range");
  return {this, code};
}

Elem Field::from_int(std::int64_t n) const {
  return {this, static_cast<std::uint32_t>(arith::mod(n, p_))};
}

Elem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > m_) throw Error(ErrorCode::InvalidArgument, "too many coordinates");
  std::uint64_t code = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= p_) throw Error(ErrorCode::InvalidArgument, "coordinate out of range");
    code = code * p_ + coeffs[i];
  }
  return {this, static_cast<std::uint32_t>(code)};
}

Elem Field::exp(std::int64_t k) const {
  return {this, exp2_[arith::mod(k, q_ - 1)]};
}

std::uint32_t Field::dlog(Elem x) const {
  check_same(x);
  if (x.is_zero()) throw Error(ErrorCode::LogOfZero, "zero has no discrete logarithm");
  return log_[x.code()];
}

std::string Field::descriptor() const {
  std::string out = "p=" + std::to_string(p_) + ",m=" + std::to_string(m_) + ",mod=[";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(modulus_[i]);
  }
  return out + "]";
}

std::string Field::format(Elem x) const {
  check_same(x);
  if (m_ == 1) return std::to_string(x.code());
  if (x.is_zero()) return "0";
  return "g^" + std::to_string(log_[x.code()]);
}

Elem Field::parse(std::string_view text) const {
  const auto s = trim_ws(text);
  std::int64_t v = 0;
  if (parse_int(s, v)) return from_int(v);
  if (s == "g") return gamma();
  if (s.size() > 2 && s[0] == 'g' && s[1] == '^' && parse_int(s.substr(2), v)) return exp(v);
  throw Error(ErrorCode::ParseError, "cannot parse field element '" + std::string(s) + "'");
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (a == 0) return b;
  if (b == 0) return a;
  if (p_ == 2) return a ^ b;
  if (m_ == 1) {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  const std::uint32_t n = q_ - 1;
  const std::uint32_t la = log_[a];
  const std::uint32_t lb = log_[b];
  const std::uint32_t k = lb >= la ? lb - la : lb + n - la;
  const std::uint32_t z = zech_[k];
  if (z == kNoLog) return 0;
  return exp2_[la + z];
}

std::uint32_t Field::neg(std::uint32_t a) const {
  if (a == 0 || p_ == 2) return a;
  if (m_ == 1) return p_ - a;
  return exp2_[log_[a] + (q_ - 1) / 2];
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const std::uint32_t n = q_ - 1;
  return exp2_[(n - log_[a]) % n];
}

std::uint32_t Field::pow(std::uint32_t a, std::int64_t k) const {
  if (a == 0) {
    if (k == 0) return 1;
    if (k > 0) return 0;
    throw Error(ErrorCode::DivisionByZero, "negative power of zero");
  }
  const std::uint64_t n = q_ - 1;
  return exp2_[arith::mul_mod(log_[a], arith::mod(k, n), n)];
}

void Field::check_same(Elem a) const {
  if (a.field_ptr() != this) throw Error(ErrorCode::MixedFields, "operand belongs to a different field");
}

}  // namespace cyclo
