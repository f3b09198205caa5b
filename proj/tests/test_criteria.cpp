#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "cyclo/arith.hpp"
#include "cyclo/criteria.hpp"
#include "support.hpp"

using namespace cyclo;
using namespace testing_support;

namespace {

MonomialMapSpec spec(const CosetsPtr& cs, std::vector<std::uint64_t> exps, std::vector<Elem> consts) {
  return {cs, std::move(exps), std::move(consts), std::nullopt};
}

MonomialMapSpec random_spec(const CosetsPtr& cs, std::mt19937_64& rng, bool coprime) {
  const auto& f = cs->field();
  MonomialMapSpec out{cs, {}, {}, std::nullopt};
  for (std::uint64_t i = 0; i < cs->ell(); ++i) {
    std::uint64_t r;
    do {
      r = 1 + rng() % (f.q() - 1);
    } while (coprime && arith::gcd(r, cs->s()) != 1);
    out.exps.push_back(r);
    out.consts.push_back(random_elem(f, rng, true));
  }
  return out;
}

bool brute(const MonomialMapSpec& s) { return is_bijection_brute(s.to_map()).is_bijection; }

}  // namespace

TEST(Main2, Examples) {
  const auto f7 = Field::make(7, 1);
  const auto cs = make_cosets(f7, 2);
  EXPECT_TRUE(check_main2(spec(cs, {1, 1}, {f7->one(), f7->one()})).is_pp);
  const auto v = check_main2(spec(cs, {1, 2}, {f7->one(), f7->one()}));
  EXPECT_FALSE(v.is_pp);
  EXPECT_TRUE(v.condition("gcd"));
  EXPECT_FALSE(v.condition("distinct"));
  EXPECT_TRUE(v.witness.has_value());
  EXPECT_THROW(v.condition("nope"), Error);
  try {
    check_main2(spec(cs, {1, 1}, {f7->one(), f7->zero()}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroConstant);
  }
}

TEST(Main2, AgreesWithBruteForce) {
  std::mt19937_64 rng(41);
  for (auto [p, m] : small_fields()) {
    const auto f = Field::make(p, m);
    for (auto ell : arith::divisors(f->q() - 1)) {
      if (ell > 12) continue;
      const auto cs = make_cosets(f, ell);
      for (int k = 0; k < 30; ++k) {
        const auto sp = random_spec(cs, rng, k % 2 == 0);
        ASSERT_EQ(check_main2(sp).is_pp, brute(sp)) << p << "^" << m << " ell=" << ell;
      }
    }
  }
}

TEST(MainAll, Examples) {
  const auto f7 = Field::make(7, 1);
  const auto id = check_main_all(spec(make_cosets(f7, 3), {1, 1, 1}, std::vector<Elem>(3, f7->one())));
  EXPECT_TRUE(id.is_pp);
  for (const auto& [label, ok] : id.conditions) EXPECT_TRUE(ok) << label;

  const auto cs = make_cosets(f7, 3);
  const Elem z = cs->zeta(), three = f7->from_int(3);
  const auto zha = check_main_all(spec(cs, {1, 3, 7}, {three, three * z * z, three * z * z}));
  EXPECT_FALSE(zha.is_pp);
  for (const auto& [label, ok] : zha.conditions) EXPECT_FALSE(ok) << label;

  try {
    check_main_all(spec(cs, {1, 2, 1}, std::vector<Elem>(3, f7->one())));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(MainAll, AllConditionsAgree) {
  std::mt19937_64 rng(42);
  for (auto [p, m] : small_fields()) {
    const auto f = Field::make(p, m);
    for (auto ell : arith::divisors(f->q() - 1)) {
      if (ell > 12) continue;
      const auto cs = make_cosets(f, ell);
      for (int k = 0; k < 20; ++k) {
        const auto sp = random_spec(cs, rng, true);
        const auto v = check_main_all(sp);
        ASSERT_EQ(v.conditions.size(), 7u);
        for (const auto& [label, ok] : v.conditions) ASSERT_EQ(ok, v.is_pp) << label;
        ASSERT_EQ(v.is_pp, brute(sp));
        ASSERT_EQ(v.is_pp, check_main2(sp).is_pp);
      }
    }
  }
}

TEST(MainAll, IndexOneDegenerates) {
  const auto f13 = Field::make(13, 1);
  const auto cs = make_cosets(f13, 1);
  for (std::uint64_t r = 1; r < 12; ++r) {
    const auto sp = spec(cs, {r}, {f13->from_int(5)});
    if (arith::gcd(r, 12) != 1) {
      EXPECT_FALSE(check_main2(sp).is_pp);
      continue;
    }
    EXPECT_TRUE(check_main_all(sp).is_pp);
  }
}

TEST(SpecialMain, Examples) {
  const auto f13 = Field::make(13, 1);
  const auto cs = make_cosets(f13, 3);
  const Elem a = f13->from_int(7);
  for (std::uint64_t r : {1u, 5u, 7u, 11u}) {
    const auto v = check_special_main(spec(cs, {r, r, r}, std::vector<Elem>(3, a)), {0, 0, 0});
    EXPECT_EQ(v.is_pp, arith::gcd(r, 3) == 1) << r;
  }
  const auto f7 = Field::make(7, 1);
  const auto cs2 = make_cosets(f7, 2);
  const auto v = check_special_main(spec(cs2, {1, 2}, {f7->one(), f7->one()}), {0, 0});
  EXPECT_FALSE(v.is_pp);
  EXPECT_TRUE(v.condition("gcd"));
  EXPECT_FALSE(v.condition("residues"));
  try {
    check_special_main(spec(cs2, {1, 1}, {f7->one(), f7->gamma()}), {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentNormalization);
  }
}

TEST(SpecialMain, AgreesWithMain2) {
  std::mt19937_64 rng(43);
  for (auto [p, m] : small_fields()) {
    const auto f = Field::make(p, m);
    for (auto ell : arith::divisors(f->q() - 1)) {
      if (ell > 12) continue;
      const auto cs = make_cosets(f, ell);
      for (int k = 0; k < 10; ++k) {
        // A_i = A gamma^(k_i) gives A_i^s = A^s zeta^(k_i)
        const Elem base = random_elem(*f, rng, true);
        auto sp = random_spec(cs, rng, k % 3 != 0);
        std::vector<std::int64_t> n;
        for (std::uint64_t i = 0; i < ell; ++i) {
          const auto ki = static_cast<std::int64_t>(rng() % (f->q() - 1));
          sp.consts[i] = base * f->exp(ki);
          n.push_back(ki + static_cast<std::int64_t>(ell) * static_cast<std::int64_t>(rng() % 3));
        }
        ASSERT_EQ(check_special_main(sp, n).is_pp, check_main2(sp).is_pp);
      }
    }
  }
}

TEST(CompleteResidues, Examples) {
  EXPECT_TRUE(complete_residues({0, 1, 2}, 3));
  EXPECT_TRUE(complete_residues({0, 2, 4}, 3));
  EXPECT_FALSE(complete_residues({0, 3, 6}, 3));
  EXPECT_FALSE(complete_residues({0, 1}, 3));
  EXPECT_TRUE(complete_residues({-1, 0, 1}, 3));
  EXPECT_TRUE(complete_residues({5}, 1));
}

TEST(Construct, Examples) {
  const auto f7 = Field::make(7, 1);
  const auto cs = make_cosets(f7, 3);
  const auto c1 = construct_from_data(cs, {1, 1, 1}, std::vector<Elem>(3, f7->one()));
  EXPECT_EQ(c1.poly, Poly::x(f7));
  EXPECT_TRUE(c1.verdict.is_pp);
  const auto c3 = construct_from_data(cs, {1, 2, 1}, std::vector<Elem>(3, f7->one()));
  EXPECT_FALSE(c3.verdict.is_pp);
  EXPECT_FALSE(is_bijection_brute(c3.poly).is_bijection);

  // with s = 1 every coset is a single point, so any P with P(0) = 0 is a
  // monomial map of index q - 1: A_i = P(g^i) / g^i, r_i = 1
  const auto f9 = Field::make(3, 2);
  const auto target = Poly::parse(f9, "x^6 + x^5 + x^3 + 2*x^2 + 2*x");
  const auto cs9 = make_cosets(f9, 8);
  std::vector<Elem> consts;
  for (int i = 0; i < 8; ++i) consts.push_back(target.eval(f9->exp(i)) / f9->exp(i));
  const auto c = construct_from_data(cs9, std::vector<std::uint64_t>(8, 1), consts);
  EXPECT_EQ(c.poly, target);
  EXPECT_TRUE(c.verdict.is_pp);
  EXPECT_TRUE(is_bijection_brute(target).is_bijection);
}

TEST(Construct, PredictedPPIsBijection) {
  std::mt19937_64 rng(44);
  for (auto [p, m] : small_fields()) {
    const auto f = Field::make(p, m);
    for (auto ell : arith::divisors(f->q() - 1)) {
      if (ell > 8) continue;
      const auto cs = make_cosets(f, ell);
      for (int k = 0; k < 5; ++k) {
        const auto sp = random_spec(cs, rng, true);
        const auto c = construct_from_data(cs, sp.exps, sp.consts);
        ASSERT_EQ(c.verdict.is_pp, is_bijection_brute(c.poly).is_bijection);
        ASSERT_EQ(c.map.eval_all(), c.poly.eval_all());
      }
    }
  }
}

TEST(Verdict, JsonSchema) {
  const auto f7 = Field::make(7, 1);
  const auto cs = make_cosets(f7, 2);
  for (const auto& v : {check_main2(spec(cs, {1, 1}, {f7->one(), f7->one()})),
                        check_main2(spec(cs, {1, 2}, {f7->one(), f7->one()}))}) {
    const auto j = nlohmann::json::parse(v.to_json());
    ASSERT_TRUE(j.is_object());
    EXPECT_EQ(j.size(), 3u);
    EXPECT_TRUE(j.at("is_pp").is_boolean());
    EXPECT_EQ(j.at("is_pp").get<bool>(), v.is_pp);
    ASSERT_TRUE(j.at("conditions").is_object());
    for (const auto& [k, val] : j.at("conditions").items()) {
      EXPECT_TRUE(val.is_boolean());
      EXPECT_EQ(val.get<bool>(), v.condition(k));
    }
    EXPECT_TRUE(j.at("witness").is_null() || j.at("witness").is_string());
    EXPECT_EQ(j.at("witness").is_null(), !v.witness.has_value());
  }
}

TEST(MonomialSpec, ValidateAndExtract) {
  const auto f7 = Field::make(7, 1);
  const auto cs = make_cosets(f7, 2);
  EXPECT_THROW(spec(cs, {1}, {f7->one()}).validate(), Error);
  EXPECT_THROW(spec(cs, {0, 1}, {f7->one(), f7->one()}).validate(), Error);
  auto sp = spec(cs, {1, 1}, {f7->one(), f7->gamma()});
  sp.t = std::vector<std::uint64_t>{0, 1};
  EXPECT_NO_THROW(sp.validate());
  sp.t = std::vector<std::uint64_t>{0, 0};
  EXPECT_THROW(sp.validate(), Error);
  const auto mp = CycloMap::monomial(cs, {3, 5}, {f7->from_int(2), f7->from_int(4)});
  const auto ms = monomial_spec(mp);
  ASSERT_TRUE(ms.has_value());
  EXPECT_EQ(ms->exps, (std::vector<std::uint64_t>{3, 5}));
  EXPECT_FALSE(monomial_spec(CycloMap(cs, {{f7->one(), Poly::parse(f7, "x^2 + x")}, {f7->one(), Poly::x(f7)}}))
                   .has_value());
}
