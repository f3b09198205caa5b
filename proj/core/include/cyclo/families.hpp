#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cyclo/mapping.hpp"
#include "cyclo/poly.hpp"

namespace cyclo {

enum class FamilyId { F1 = 1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12, F13, F14, F15, F16, F17 };

std::string to_string(FamilyId id);
/// Accepts "F4", "f4" or "4". Throws ParseError.
FamilyId parse_family_id(std::string_view text);

// Index 2, general branches A_0 f_0 and A_1 f_1 (sufficient condition only).
struct F1Params {
  Elem A0, A1;
  Poly f0, f1;
};

// Index 2, branches x^(r_i) f_i(x^((q-1)/2)).
struct F2Params {
  std::uint64_t r0 = 1, r1 = 1;
  Poly f0, f1;
};

// (1 - x^t) x^((q-1)/2 + r) - x^r - x^(t+r); the corollary variant only
// predicts sufficiency.
struct F3Params {
  std::uint64_t t = 1, r = 1;
  bool corollary = false;
};

// Characteristic 3: alpha x^t on C_0, beta (x^3 + theta x^2 + theta^2 x) on C_1.
struct F4Params {
  Elem alpha, beta, theta;
  std::uint64_t t = 1;
};

// Characteristic 3: beta (x^3 + theta x^2 + theta^2 x) on C_0, alpha x^t on C_1.
struct F5Params {
  Elem alpha, beta, theta;
  std::uint64_t t = 1;
};

enum class F6Preset {
  Char2,             // x^(2s'+2^i) + x^(2s'+2^j) + x^(s'+2^i) + x^(s'+2^j) + x^(2^i), s' = (2^n-1)/3
  Cubic3i,           // x^(s+3^i) + 2x^(s+3) + 2x^(s+2) + 2x^(s+1) + x^(3^i) + x^3 + x^2 + x
  Cubic3Cor,         // x^(s+2) + x^(s+1) + x^3 + 2x^2 + 2x
  Cubic2i,           // x^(s+2^i) + 2x^(s+3) + 2x^(s+2) + 2x^(s+1) + x^(2^i) + x^3 + x^2 + x, n odd
  Cubic2Cor,         // x^(s+3) + x^(s+1) + 2x^3 + x^2 + 2x, n odd
  Quad3i,            // x^(s+3^i) + 2x^(s+3) + x^(s+2) + 2x^(s+1) + 2x^(3^i) + 2x^3 + x^2 + 2x, n odd
  Quad2i,            // x^(s+2^i) + x^(s+3) + 2x^(s+2) + x^(s+1) + 2x^(2^i) + x^3 + 2x^2 + x, n odd
  Quad2Cor,          // x^(s+3) + x^(s+1) + x^3 + x^2 + x, n odd
  Hou,               // (1 - x - x^2) x^((q+1)/2) - 1 - x + x^2, n even
  ZhaHuProp1,        // (beta x^3 + beta theta x^2 + beta theta^2 x - x^t) x^s - (... + x^t)
  ThreeBranchEqual,  // three branches with A_0^s = A_1^s = A_2^s
};

std::string to_string(F6Preset preset);
F6Preset parse_f6_preset(std::string_view text);

struct F6Params {
  F6Preset preset = F6Preset::Cubic3i;
  std::uint64_t i = 0, j = 0;
  // ZhaHuProp1 only.
  std::optional<Elem> theta, beta;
  std::uint64_t t = 1;
  // ThreeBranchEqual only.
  std::vector<Elem> consts;
  std::vector<std::uint64_t> exps;
};

// Characteristic 3, two cubic branches.
struct F7Params {
  Elem alpha, beta, gammac, theta;
};

// Three monomial branches A_i x^(r_i) with the corollary's scaling.
struct F8Params {
  std::vector<Elem> consts;
  std::vector<std::uint64_t> exps;
};

struct F9Params {};

struct F10Params {
  std::uint64_t i = 1;
};

// ell prime; A_0 x^(r_0) on C_0 and A_1 x^(r_1) on every other coset.
struct F11Params {
  std::uint64_t ell = 2;
  std::uint64_t r0 = 1, r1 = 1;
  Elem A0, A1;
};

enum class F12Preset { General, Mod16, Mod25, ZhaHuThm11 };

std::string to_string(F12Preset preset);
F12Preset parse_f12_preset(std::string_view text);

// sum_i x^(p^i) prod_{j != i} (x^s - theta^j), ell = ord(theta).
struct F12Params {
  Elem theta;
  F12Preset preset = F12Preset::General;
};

// Branches x^(r_i) g_i(x^s)^ell.
struct F13Params {
  std::uint64_t ell = 2;
  std::vector<std::uint64_t> r;
  std::vector<Poly> g;
};

// Branches x^(r_i) f_i(x^s), f_i over the subfield of order q0.
struct F14Params {
  std::uint64_t ell = 2;
  std::uint64_t q0 = 0;
  std::vector<std::uint64_t> r;
  std::vector<Poly> f;
};

// Branches x^(r_i) h_(k_i)(x^(e_i s))^(t_i), h_k = 1 + x + ... + x^k.
struct F15Params {
  std::uint64_t ell = 2;
  std::uint64_t q0 = 0;
  std::vector<std::uint64_t> r, k, e, t;
};

// Branches x^(r_i) f_i(x^(e_i s)), f_i = h_(k'_i)^(t_i) hhat_i(h_(k_i)^(kbar_i)).
struct F16Params {
  std::uint64_t ell = 2;
  std::uint64_t q0 = 0;
  std::vector<std::uint64_t> r, k, kp, e, t;
  std::vector<Poly> hhat;
};

// Branches x^(u_i) + a_i x^(r_i).
struct F17Params {
  std::uint64_t ell = 2;
  std::vector<std::uint64_t> u, r;
  std::vector<Elem> a;
};

using FamilyParams = std::variant<F1Params, F2Params, F3Params, F4Params, F5Params, F6Params, F7Params, F8Params,
                                  F9Params, F10Params, F11Params, F12Params, F13Params, F14Params, F15Params,
                                  F16Params, F17Params>;

inline FamilyId family_of(const FamilyParams& params) { return static_cast<FamilyId>(params.index() + 1); }

struct FamilyResult {
  FamilyId id = FamilyId::F1;
  /// The family's polynomial, canonical. Equals map_to_poly(map) + offset.
  Poly poly;
  CycloMap map;
  /// The theorem's verdict computed from its stated conditions.
  bool predicted = false;
  /// False when the statement only gives a sufficient condition.
  bool iff = true;
  Elem offset;
  std::optional<BijectionReport> brute;
};

/// Builds the family member. Throws DomainCheckFailed when the parameters or
/// the field fall outside the theorem's hypotheses.
FamilyResult construct_family(const FieldPtr& field, const FamilyParams& params, bool brute = false);
/// As above; throws InvalidArgument unless params belong to family id.
FamilyResult construct_family(FamilyId id, const FieldPtr& field, const FamilyParams& params, bool brute = false);

// ---------------------------------------------------------------------------
// Parameter grids

/// One grid point: parameter name -> value text.
using Assignment = std::map<std::string, std::string>;

/// "family=F4;p=3;m=2;alpha=*;beta=*;theta=*;t=1,2,3".
///
/// Values are comma lists; "a..b" is an integer range and "*" stands for all
/// nonzero field elements (for theta in F12 with ell given: all elements of
/// order ell). Per-branch parameters are named r0, r1, ... or given once as
/// r=... to vary each index independently. p and m may be lists; samples=N
/// draws N random points instead of the full product.
struct Grid {
  FamilyId family = FamilyId::F1;
  std::vector<std::uint32_t> p, m;
  std::optional<std::string> modulus;
  std::vector<std::pair<std::string, std::vector<std::string>>> keys;
  std::optional<std::uint64_t> samples;
};

Grid parse_grid(std::string_view text);
/// Fields named by the grid's p and m lists; empty when the grid names none.
std::vector<FieldPtr> grid_fields(const Grid& grid);
/// Grid points for one field, in enumeration order (or sampling order).
std::vector<Assignment> expand_grid(const Grid& grid, const FieldPtr& field, std::uint64_t seed = 0);
/// Typed parameters from a grid point. Throws ParseError or InvalidArgument.
FamilyParams params_from_assignment(FamilyId id, const FieldPtr& field, const Assignment& a);
std::string to_string(const Assignment& a);

struct SweepSummary {
  std::uint64_t points = 0;
  /// Points rejected by the family's domain checks.
  std::uint64_t skipped = 0;
  std::uint64_t predicted_pp = 0;
  std::uint64_t brute_pp = 0;
  /// iff: predicted != brute. Sufficiency only: predicted and not brute.
  std::uint64_t disagreements = 0;
  bool iff = true;
  std::optional<std::string> first_disagreement;
  std::optional<std::string> first_skip_reason;

  std::uint64_t evaluated() const { return points - skipped; }
  SweepSummary& operator+=(const SweepSummary& other);
};

/// Runs construct_family with the brute-force oracle at every grid point.
/// Points are evaluated concurrently; the summary is independent of the
/// thread count.
SweepSummary sweep_family(const FieldPtr& field, const Grid& grid, std::uint64_t seed = 0);
SweepSummary sweep_family(FamilyId id, const FieldPtr& field, const Grid& grid, std::uint64_t seed = 0);

}  // namespace cyclo
