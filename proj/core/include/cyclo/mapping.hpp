#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyclo/cosets.hpp"
#include "cyclo/poly.hpp"

namespace cyclo {

/// One piece x -> scale * poly(x) of a cyclotomic mapping, acting on one coset.
struct Branch {
  Elem scale;
  Poly poly;
};

/// Branch data of a map whose every branch is A_i * x^(r_i).
struct MonomialBranches {
  std::vector<std::uint64_t> exps;
  std::vector<Elem> consts;
};

/// Piecewise map over the cosets of cs: 0 -> 0 and x -> A_i r_i(x) on C_i.
class CycloMap {
 public:
  /// Throws InvalidArgument unless there is exactly one branch per coset.
  CycloMap(CosetsPtr cs, std::vector<Branch> branches);

  /// Monomial map A_i x^(r_i).
  static CycloMap monomial(CosetsPtr cs, const std::vector<std::uint64_t>& exps, const std::vector<Elem>& consts);

  /// Parses "ell=<l>; branch[i]=<A_i> * (<poly>)" with ';' or newlines between
  /// items. Branches may come in any order but each index exactly once.
  static CycloMap parse(FieldPtr field, std::string_view text);

  const CosetStructure& cosets() const { return *cs_; }
  const CosetsPtr& cosets_ptr() const { return cs_; }
  const Field& field() const { return cs_->field(); }
  std::uint64_t ell() const { return cs_->ell(); }
  const std::vector<Branch>& branches() const { return branches_; }

  Elem eval(Elem x) const;
  /// Values at every element, indexed by element code.
  std::vector<std::uint32_t> eval_all() const;

  /// True when every branch polynomial is a single positive power of x.
  bool is_monomial() const { return monomial_form().has_value(); }
  /// (A_i * c_i, e_i) for branches scale * c_i x^(e_i); nullopt otherwise.
  std::optional<MonomialBranches> monomial_form() const;

  /// "ell=<l>" then one "branch[i]=<A_i> * (<poly>)" line per branch.
  std::string to_string() const;

 private:
  CosetsPtr cs_;
  std::vector<Branch> branches_;
};

inline Elem eval_map(const CycloMap& m, Elem x) { return m.eval(x); }

/// The unique polynomial modulo x^q - x agreeing with the map, built by
/// expanding sum_i A_i / (ell zeta^(i(ell-1))) r_i(x) sum_k zeta^(ik) x^((ell-1-k)s).
/// Throws CharacteristicDividesEll when p | ell.
Poly map_to_poly(const CycloMap& m);

/// One summand r_i(x) f_i(x^s) of a structured polynomial.
struct StructuredTerm {
  Poly r;
  Poly f;
};

/// Polynomial sum_i r_i(x) f_i(x^s) for the coset structure's s.
Poly structured_poly(const std::vector<StructuredTerm>& terms, const CosetStructure& cs);

/// Branch j = (1, sum_i f_i(zeta^j) r_i(x)). Throws NonzeroAtZero when the
/// structured polynomial does not vanish at 0.
CycloMap structured_to_map(const std::vector<StructuredTerm>& terms, CosetsPtr cs);

/// Reads a polynomial as a cyclotomic map of the given coset structure by
/// grouping exponents into x^k f_k(x^s), 1 <= k <= s. Throws NonzeroAtZero.
CycloMap poly_to_map(const Poly& p, CosetsPtr cs);

struct BijectionReport {
  bool is_bijection = false;
  /// x != y with equal images; the first collision in code order.
  std::optional<std::pair<Elem, Elem>> collision;
  /// Smallest value (by code) that is never attained.
  std::optional<Elem> missed;
  /// Per branch: sorted coset indices hit by A_i r_i(C_i), or nullopt when the
  /// branch also takes the value 0. Empty for plain polynomial checks.
  std::vector<std::optional<std::vector<std::uint64_t>>> coset_images;
  /// True when every branch maps its coset bijectively onto a single coset.
  bool branches_coset_bijective = false;
};

/// Exhaustive check of the map over all q inputs.
BijectionReport is_bijection_brute(const CycloMap& m);
/// Exhaustive check of the function x -> P(x).
BijectionReport is_bijection_brute(const Poly& p);
/// Bijection report for a value table indexed by element code.
BijectionReport bijection_report(const Field& field, const std::vector<std::uint32_t>& values);

}  // namespace cyclo
