#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cyclo/error.hpp"

namespace cyclo {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// An element of a specific finite field.
///
/// The element is stored by its code: the power-basis coordinates
/// c_0 + c_1 x + ... + c_{m-1} x^{m-1} read as the base-p number
/// c_0 + c_1 p + ... + c_{m-1} p^{m-1}. Codes therefore enumerate the field in
/// the same order used to pick the canonical primitive element.
///
/// An Elem refers to its Field by raw pointer; the Field must outlive it.
/// Poly and the higher-level types keep a FieldPtr alive for that purpose.
class Elem {
 public:
  Elem() = default;
  Elem(const Field* field, std::uint32_t code) : field_(field), code_(code) {}

  const Field& field() const { return *field_; }
  const Field* field_ptr() const { return field_; }
  std::uint32_t code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  /// Power-basis coordinates, low degree first, exactly m entries.
  std::vector<std::uint32_t> coeffs() const;

  Elem operator+(Elem rhs) const;
  Elem operator-(Elem rhs) const;
  Elem operator*(Elem rhs) const;
  Elem operator/(Elem rhs) const;
  Elem operator-() const;
  Elem& operator+=(Elem rhs) { return *this = *this + rhs; }
  Elem& operator-=(Elem rhs) { return *this = *this - rhs; }
  Elem& operator*=(Elem rhs) { return *this = *this * rhs; }

  Elem inv() const;
  /// Any integer exponent; 0^0 == 1, 0^k == 0 for k > 0.
  Elem pow(std::int64_t k) const;

  friend bool operator==(Elem a, Elem b) { return a.field_ == b.field_ && a.code_ == b.code_; }

 private:
  const Field* field_ = nullptr;
  std::uint32_t code_ = 0;
};

/// GF(p^m) with a fixed modulus, a fixed primitive element and exp/log tables.
///
/// Immutable after construction. Multiplication, inversion and powering go
/// through the exp/log tables; addition uses XOR in characteristic 2, plain
/// modular addition in prime fields and a Zech-logarithm table otherwise.
class Field {
 public:
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;
  static constexpr std::uint32_t kNoLog = 0xFFFFFFFFu;

  /// Builds GF(p^m). Without a modulus the lexicographically smallest monic
  /// irreducible (c_0 compared first) is used. Throws NotPrime, Reducible,
  /// FieldTooLarge or InvalidArgument.
  static FieldPtr make(std::uint32_t p, std::uint32_t m,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

  /// Parses "p=3,m=2" or "p=3,m=2,mod=[2,2,1]".
  static FieldPtr from_descriptor(std::string_view text);

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t order_star() const { return q_ - 1; }
  bool is_prime_field() const { return m_ == 1; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Elem zero() const { return {this, 0}; }
  Elem one() const { return {this, 1}; }
  Elem gamma() const { return {this, gamma_}; }
  /// Element with the given code; throws InvalidArgument when out of range.
  Elem elem(std::uint32_t code) const;
  /// Image of an integer under Z -> GF(p).
  Elem from_int(std::int64_t n) const;
  Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
  /// gamma^k for any integer k.
  Elem exp(std::int64_t k) const;
  /// Discrete log base gamma in [0, q-2]; throws LogOfZero.
  std::uint32_t dlog(Elem x) const;

  std::string descriptor() const;
  /// Prime fields print the residue; extension fields print "g^k" or "0".
  std::string format(Elem x) const;
  /// Accepts the format() output plus bare integers (embedded from GF(p)),
  /// "g" and "-<int>". Throws ParseError.
  Elem parse(std::string_view text) const;

  // Code-level arithmetic for hot loops. Arguments must be valid codes.
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp2_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::int64_t k) const;
  /// gamma^k with 0 <= k < 2(q-1).
  std::uint32_t exp_code(std::uint64_t k) const { return exp2_[k]; }
  std::uint32_t log_code(std::uint32_t a) const { return log_[a]; }

  /// Requires both elements to belong to this field; throws MixedFields.
  void check_same(Elem a) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);
  void build_tables();

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::uint32_t gamma_ = 0;
  std::vector<std::uint32_t> exp2_;  // gamma^k for k in [0, 2(q-1)), doubled to skip a reduction
  std::vector<std::uint32_t> log_;   // log_[0] == kNoLog
  std::vector<std::uint32_t> zech_;  // log(1 + gamma^k) or kNoLog; odd-characteristic extensions only
};

namespace gf {

/// Irreducibility over GF(p) of a polynomial given low-to-high (Rabin's test).
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

/// Lexicographically smallest monic irreducible of degree m, c_0 compared first.
std::vector<std::uint32_t> smallest_irreducible(std::uint32_t p, std::uint32_t m);

}  // namespace gf

}  // namespace cyclo
