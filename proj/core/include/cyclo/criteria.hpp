#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclo/cosets.hpp"
#include "cyclo/mapping.hpp"
#include "cyclo/poly.hpp"

namespace cyclo {

/// Outcome of a permutation criterion, with every evaluated condition listed
/// in evaluation order.
struct Verdict {
  bool is_pp = false;
  std::vector<std::pair<std::string, bool>> conditions;
  std::optional<std::string> witness;

  /// Result of a named condition; throws InvalidArgument for unknown labels.
  bool condition(std::string_view label) const;
  /// {"is_pp": bool, "conditions": {label: bool}, "witness": string|null}
  std::string to_json() const;
};

/// The monomial map A_i x^(r_i) on C_i.
struct MonomialMapSpec {
  CosetsPtr cs;
  std::vector<std::uint64_t> exps;
  std::vector<Elem> consts;
  /// Optional t_i with A_i^s = zeta^(t_i).
  std::optional<std::vector<std::uint64_t>> t;

  /// Throws InvalidArgument on length mismatch, a zero exponent or an
  /// inconsistent t.
  void validate() const;
  CycloMap to_map() const { return CycloMap::monomial(cs, exps, consts); }
};

/// Spec for a map whose branches are all monomials; nullopt otherwise.
std::optional<MonomialMapSpec> monomial_spec(const CycloMap& m);

/// gcd(r_i, s) = 1 for all i and the A_i^s zeta^(r_i i) pairwise distinct.
/// Throws ZeroConstant.
Verdict check_main2(const MonomialMapSpec& spec);

/// Conditions (a)-(f) evaluated independently, plus "c_symmetric" (the
/// congruence of (c) with the pair order reversed). is_pp is condition (a).
/// Throws ZeroConstant, or PreconditionViolated when some gcd(r_i, s) != 1.
Verdict check_main_all(const MonomialMapSpec& spec);

/// gcd(r_i, s) = 1 for all i and {i r_i + n_i} complete mod ell, given
/// A_i^s = A zeta^(n_i) for a common A. Throws InconsistentNormalization.
Verdict check_special_main(const MonomialMapSpec& spec, const std::vector<std::int64_t>& n);

/// True when vals has exactly ell entries, pairwise distinct mod ell.
bool complete_residues(const std::vector<std::int64_t>& vals, std::uint64_t ell);

struct Construction {
  Poly poly;
  CycloMap map;
  Verdict verdict;
};

/// Monomial map from (exps, consts), its polynomial, and check_main2's verdict.
Construction construct_from_data(CosetsPtr cs, const std::vector<std::uint64_t>& exps,
                                 const std::vector<Elem>& consts);

}  // namespace cyclo
