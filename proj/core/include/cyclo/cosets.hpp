#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cyclo/field.hpp"

namespace cyclo {

/// Cyclotomic cosets C_i = gamma^i C_0 of index ell in the multiplicative group,
/// with zeta = gamma^s the fixed primitive ell-th root of unity.
class CosetStructure {
 public:
  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  std::uint64_t ell() const { return ell_; }
  std::uint64_t s() const { return s_; }
  Elem zeta() const { return {field_.get(), zeta_}; }
  /// [zeta^0, ..., zeta^(ell-1)].
  const std::vector<Elem>& mu() const { return mu_; }

  /// Coset index of a nonzero element; throws ZeroHasNoCoset.
  std::uint64_t coset_of(Elem x) const;
  /// Unchecked lookup by element code; code must be nonzero.
  std::uint32_t coset_of_code(std::uint32_t code) const { return coset_index_[code]; }
  /// Elements of C_i in the order gamma^(i + ell*k), k = 0..s-1.
  std::vector<Elem> members(std::uint64_t i) const;

 private:
  friend std::shared_ptr<const CosetStructure> make_cosets(FieldPtr field, std::uint64_t ell);
  CosetStructure() = default;

  FieldPtr field_;
  std::uint64_t ell_ = 1;
  std::uint64_t s_ = 0;
  std::uint32_t zeta_ = 1;
  std::vector<std::uint32_t> coset_index_;
  std::vector<Elem> mu_;
};

using CosetsPtr = std::shared_ptr<const CosetStructure>;

/// Throws NotADivisor unless ell >= 1 divides q - 1.
CosetsPtr make_cosets(FieldPtr field, std::uint64_t ell);

inline std::uint64_t coset_of(const CosetStructure& cs, Elem x) { return cs.coset_of(x); }

/// eta(x) in {-1, 0, 1}; throws EvenCharacteristicField for even q.
int quadratic_character(const Field& field, Elem x);

}  // namespace cyclo
