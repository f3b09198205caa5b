#include "cyclo/cosets.hpp"

namespace cyclo {

CosetsPtr make_cosets(FieldPtr field, std::uint64_t ell) {
  const std::uint64_t n = field->q() - 1;
  if (ell < 1 || n % ell != 0) {
    throw Error(ErrorCode::NotADivisor, std::to_string(ell) + " does not divide q - 1 = " + std::to_string(n));
  }
  std::shared_ptr<CosetStructure> cs(new CosetStructure());
  cs->field_ = field;
  cs->ell_ = ell;
  cs->s_ = n / ell;
  cs->zeta_ = field->exp(static_cast<std::int64_t>(cs->s_)).code();
  cs->coset_index_.assign(field->q(), static_cast<std::uint32_t>(ell));
  for (std::uint64_t k = 0; k < n; ++k) {
    cs->coset_index_[field->exp_code(k)] = static_cast<std::uint32_t>(k % ell);
  }
  for (std::uint64_t i = 0; i < ell; ++i) cs->mu_.push_back(field->exp(static_cast<std::int64_t>(i * cs->s_)));
  return cs;
}

std::uint64_t CosetStructure::coset_of(Elem x) const {
  field_->check_same(x);
  if (x.is_zero()) throw Error(ErrorCode::ZeroHasNoCoset, "0 lies in no cyclotomic coset");
  return coset_index_[x.code()];
}

std::vector<Elem> CosetStructure::members(std::uint64_t i) const {
  std::vector<Elem> out;
  out.reserve(s_);
  for (std::uint64_t k = 0; k < s_; ++k) out.push_back(field_->exp(static_cast<std::int64_t>(i + ell_ * k)));
  return out;
}

int quadratic_character(const Field& field, Elem x) {
  field.check_same(x);
  if (field.p() == 2) throw Error(ErrorCode::EvenCharacteristicField, "quadratic character needs odd q");
  if (x.is_zero()) return 0;
  return x.pow((field.q() - 1) / 2).is_one() ? 1 : -1;
}

}  // namespace cyclo
