#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclo/field.hpp"

namespace cyclo {

/// Univariate polynomial over a Field, dense coefficients low to high.
///
/// Stored exactly as built: exponents at or above q are kept until
/// canonical() folds them. The zero polynomial has no coefficients.
class Poly {
 public:
  struct Term {
    std::uint64_t exp;
    Elem coeff;
  };

  // Largest exponent a Poly may hold before canonicalization.
  static constexpr std::uint64_t kMaxDegree = std::uint64_t{1} << 24;

  explicit Poly(FieldPtr field) : field_(std::move(field)) {}
  Poly(FieldPtr field, std::vector<std::uint32_t> codes);

  static Poly constant(FieldPtr field, Elem c);
  static Poly monomial(FieldPtr field, Elem c, std::uint64_t exp);
  static Poly x(FieldPtr field) { return monomial(field, field->one(), 1); }
  static Poly from_terms(FieldPtr field, const std::vector<Term>& terms);
  /// Parses "C*x^E + ..."; see to_string(). Throws ParseError.
  static Poly parse(FieldPtr field, std::string_view text);

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
  Elem coeff(std::uint64_t exp) const;
  Elem leading() const;
  const std::vector<std::uint32_t>& codes() const { return coeffs_; }
  /// Nonzero terms in increasing exponent order.
  std::vector<Term> terms() const;
  std::size_t term_count() const;

  Poly operator+(const Poly& rhs) const;
  Poly operator-(const Poly& rhs) const;
  Poly operator-() const;
  Poly operator*(const Poly& rhs) const;
  Poly operator*(Elem c) const;
  Poly& operator+=(const Poly& rhs) { return *this = *this + rhs; }
  Poly& operator-=(const Poly& rhs) { return *this = *this - rhs; }

  /// Product reduced modulo x^q - x.
  Poly mul_mod(const Poly& rhs) const;
  /// k-th power reduced modulo x^q - x.
  Poly pow_mod(std::uint64_t k) const;
  /// f(x^s), exact (no folding).
  Poly compose_power(std::uint64_t s) const;
  /// Reduction modulo x^q - x; exponents e >= q fold to ((e - 1) mod (q - 1)) + 1.
  Poly canonical() const;
  bool is_canonical() const { return degree() < static_cast<std::int64_t>(field_->q()); }

  Elem eval(Elem x) const;
  /// Values at every field element, indexed by element code.
  std::vector<std::uint32_t> eval_all() const;

  /// Terms "C*x^E" joined by " + ", descending E; a unit coefficient is
  /// omitted, "x^1" prints as "x" and the constant prints bare.
  std::string to_string() const;

  /// Same field and same stored coefficients.
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();
  void check_same(const Poly& rhs) const;

  FieldPtr field_;
  std::vector<std::uint32_t> coeffs_;
};

inline Poly canonicalize(const Poly& p) { return p.canonical(); }
Elem eval(const Poly& p, Elem x);

/// Exponent folding used by canonicalization.
std::uint64_t fold_exponent(std::uint64_t e, std::uint32_t q);

/// P(x) = a * x^r * f(x^s) + b with q - 1 = ell * s and f monic.
struct IndexForm {
  std::uint64_t ell = 0;
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  Elem a;
  Elem b;
  /// f as (e_j, coefficient) pairs; the leading term has coefficient 1 and
  /// the e_j together with ell have gcd 1.
  std::vector<Poly::Term> f_terms;

  Poly f(const FieldPtr& field) const;
  /// a * x^r * f(x^s) + b, canonicalized.
  Poly reconstruct(const FieldPtr& field) const;
};

/// Index of a nonconstant polynomial. Throws ConstantPolynomial.
IndexForm index_of(const Poly& p);

}  // namespace cyclo
