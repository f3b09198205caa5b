#include <gtest/gtest.h>

#include "cyclo/arith.hpp"
#include "cyclo/criteria.hpp"
#include "cyclo/families.hpp"
#include "support.hpp"

using namespace cyclo;
using namespace testing_support;

namespace {

struct Built {
  Assignment point;
  FamilyResult result;
};

// Every grid point inside the family's hypotheses, constructed with brute force.
std::vector<Built> build_all(const std::string& grid_text, std::uint64_t seed = 0) {
  const Grid g = parse_grid(grid_text);
  std::vector<Built> out;
  for (const auto& f : grid_fields(g)) {
    for (const auto& a : expand_grid(g, f, seed)) {
      try {
        out.push_back({a, construct_family(f, params_from_assignment(g.family, f, a), true)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainCheckFailed) throw;
      }
    }
  }
  return out;
}

Poly px(const FieldPtr& f, std::uint64_t e) { return Poly::monomial(f, f->one(), e); }

const std::vector<std::string>& invariant_grids() {
  static const std::vector<std::string> grids = {
      "family=F1;p=5,7;A0=*;A1=*;f0=x,x^3;f1=x,x^5",
      "family=F2;p=7;m=1;r0=1..5;r1=1..5;f0=1,x+1;f1=1,x+2",
      "family=F3;p=3,5,7;m=1,2;t=1..4;r=1..4;corollary=0,1",
      "family=F4;p=3;m=2;alpha=*;beta=*;theta=*;t=1,2,3;samples=200",
      "family=F5;p=3;m=1..3;alpha=*;beta=*;theta=*;t=1..5;samples=200",
      "family=F6;p=3;m=1..4;preset=cubic3i,cubic3cor,cubic2i,cubic2cor,quad3i,quad2i,quad2cor,hou;i=0..3",
      "family=F6;p=2;m=2,4,6;preset=char2;i=0..3;j=0..3",
      "family=F6;p=3;m=2,3;preset=zhahu_prop1;theta=*;beta=*;t=1,2,5",
      "family=F6;p=7;preset=three_branch_equal;A=1,6;r=1..5",
      "family=F6;p=13;preset=three_branch_equal;A=1,5,8,12;r=1..7;samples=300",
      "family=F7;p=3;m=2;alpha=*;beta=*;gammac=*;theta=*;samples=200",
      "family=F8;p=7,13;A=*;r=1..5;samples=200",
      "family=F9;p=7,13,19,31;m=1",
      "family=F9;p=2,5;m=2,4",
      "family=F10;p=19,37;i=1..4",
      "family=F10;p=2;m=6;i=1..4",
      "family=F11;p=7,13;ell=2,3;r0=1..5;r1=1..5;A0=*;A1=*;samples=200",
      "family=F12;p=5,13,17;theta=*",
      "family=F12;p=17;theta=*;preset=mod16",
      "family=F12;p=101;theta=*;preset=mod25;samples=40",
      "family=F12;p=3;m=4;theta=*;preset=zhahu_thm11",
      "family=F13;p=7,13;ell=2,3;r=1..5;g=1,x+1,x^2+3;samples=200",
      "family=F14;p=3;m=2,4;ell=2;q0=3;r=1..5;f=1,x+1,x+2,2*x+1;samples=200",
      "family=F15;p=3;m=2,4;ell=2;q0=3;r=1..5;k=1..4;e=1,3;t=1,2;samples=200",
            "family=F16;p=2;m=2,4;ell=3;q0=2;r=1..5;k=1..4;kp=1..4;e=1,2;t=1,2;hhat=1,x;samples=300",
      "family=F16;p=5;m=2;ell=3;q0=5;r=1..7;k=1..4;kp=1..4;e=1,2;t=1..3;samples=300",
  };
  return grids;
}

}  // namespace

TEST(Families, PolynomialMatchesMap) {
  for (const auto& g : invariant_grids()) {
    std::vector<Built> built;
    try {
      built = build_all(g, 7);
    } catch (const std::exception& e) {
      FAIL() << g << ": " << e.what();
    }
    for (const auto& b : built) {
      const auto& r = b.result;
      const Poly expect = map_to_poly(r.map) + Poly::constant(r.poly.field_ptr(), r.offset);
      ASSERT_EQ(r.poly, expect) << g << " at " << to_string(b.point);
      ASSERT_EQ(r.map.eval_all(), (r.poly - Poly::constant(r.poly.field_ptr(), r.offset)).canonical().eval_all());
    }
  }
}

TEST(Families, PredictionsAgreeWithBruteForce) {
  for (const auto& g : invariant_grids()) {
    std::vector<Built> built;
    try {
      built = build_all(g, 8);
    } catch (const std::exception& e) {
      FAIL() << g << ": " << e.what();
    }
    for (const auto& b : built) {
      const auto& r = b.result;
      ASSERT_TRUE(r.brute.has_value());
      if (r.iff) {
        ASSERT_EQ(r.predicted, r.brute->is_bijection) << g << " at " << to_string(b.point);
      } else if (r.predicted) {
        ASSERT_TRUE(r.brute->is_bijection) << g << " at " << to_string(b.point);
      }
    }
  }
}

TEST(Families, BinomialBranchesInsideHypothesis) {
  std::mt19937_64 rng(52);
  int pp = 0, total = 0;
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{13, 1}, {17, 1}, {5, 2}, {7, 2}, {3, 4}}) {
    const auto f = Field::make(p, m);
    for (std::uint64_t ell : {2u, 3u, 4u, 6u}) {
      if ((f->q() - 1) % (2 * ell) != 0) continue;
      for (int k = 0; k < 40; ++k) {
        const auto r = construct_family(f, admissible_binomial(f, ell, rng), true);
        ASSERT_EQ(r.poly, map_to_poly(r.map));
        ASSERT_EQ(r.predicted, r.brute->is_bijection) << p << "^" << m << " ell=" << ell;
        pp += r.predicted;
        ++total;
      }
    }
  }
  EXPECT_GT(pp, 0);
  EXPECT_GT(total, 400);
}

TEST(Families, Examples) {
  const auto f25 = Field::make(5, 2);
  const auto f3 = construct_family(f25, F3Params{1, 1, false}, true);
  EXPECT_FALSE(f3.predicted);
  EXPECT_FALSE(f3.brute->is_bijection);

  const auto f7 = Field::make(7, 1);
  const auto f9 = construct_family(f7, F9Params{}, true);
  EXPECT_FALSE(f9.predicted);
  EXPECT_FALSE(f9.brute->is_bijection);

  const auto f16 = Field::make(2, 4);
  F6Params c2;
  c2.preset = F6Preset::Char2;
  c2.i = 0;
  c2.j = 1;
  const auto r = construct_family(f16, c2, true);
  EXPECT_TRUE(r.predicted);
  EXPECT_TRUE(r.brute->is_bijection);
}

TEST(Families, CorollaryOverGF9) {
  const auto f9 = Field::make(3, 2);
  F6Params p;
  p.preset = F6Preset::Cubic3Cor;
  const auto r = construct_family(f9, p, true);
  EXPECT_EQ(r.poly, Poly::parse(f9, "x^6 + x^5 + x^3 + 2*x^2 + 2*x"));
  EXPECT_TRUE(r.predicted);
  EXPECT_TRUE(r.brute->is_bijection);
  EXPECT_EQ(index_of(r.poly).ell, 8u);
}

TEST(Families, ThreeBranchCoefficientExtraction) {
  for (std::uint32_t p : {7u, 13u, 19u}) {
    const auto f = Field::make(p, 1);
    const auto cs = make_cosets(f, 3);
    const Elem z = cs->zeta(), one = f->one(), three = f->from_int(3);
    const Poly xs = px(f, cs->s());
    auto lin = [&](Elem c) { return xs - Poly::constant(f, c); };
    // x(x^s - z)(x^s - z^2) + x^3 (x^s - 1)(x^s - z^2) + z x^p (x^s - 1)(x^s - z)
    const std::vector<StructuredTerm> terms = {
        {px(f, 1), Poly::monomial(f, one, 2) - Poly::monomial(f, z + z * z, 1) + Poly::constant(f, z * z * z)},
        {px(f, 3), Poly::monomial(f, one, 2) - Poly::monomial(f, one + z * z, 1) + Poly::constant(f, z * z)},
        {px(f, p), (Poly::monomial(f, one, 2) - Poly::monomial(f, one + z, 1) + Poly::constant(f, z)) * z},
    };
    const Poly display = structured_poly(terms, *cs);
    EXPECT_EQ(display, ((px(f, 1) * lin(z) * lin(z * z)) + px(f, 3) * lin(one) * lin(z * z) +
                        px(f, p) * lin(one) * lin(z) * z)
                           .canonical());
    EXPECT_EQ(display, construct_family(f, F9Params{}).poly);
    const auto mp = structured_to_map(terms, cs);
    const std::vector<Elem> expect = {three, three * z * z, three * z * z};
    const std::uint64_t exps[] = {1, 3, p};
    for (std::size_t j = 0; j < 3; ++j) {
      const auto& b = mp.branches()[j];
      EXPECT_EQ((b.poly * b.scale).canonical(), Poly::monomial(f, expect[j], exps[j]).canonical()) << p << " " << j;
    }
  }
}

TEST(Families, TelescopedTwoValuePolynomial) {
  std::mt19937_64 rng(51);
  for (std::uint32_t p : {7u, 11u, 13u, 31u}) {
    const auto f = Field::make(p, 1);
    for (std::uint64_t ell : {2u, 3u, 5u}) {
      if ((p - 1) % ell != 0) continue;
      for (int k = 0; k < 20; ++k) {
        F11Params fp{ell, 1 + rng() % (p - 2), 1 + rng() % (p - 2), random_elem(*f, rng, true),
                     random_elem(*f, rng, true)};
        if (fp.r1 % ell == 0) continue;
        const auto r = construct_family(f, fp);
        std::vector<std::uint64_t> exps(ell, fp.r1);
        const Elem l = f->from_int(static_cast<std::int64_t>(ell));
        std::vector<Elem> consts(ell, l * fp.A1);
        exps[0] = fp.r0;
        consts[0] = l * fp.A0;
        ASSERT_EQ(r.poly, map_to_poly(CycloMap::monomial(make_cosets(f, ell), exps, consts)));
      }
    }
  }
}

TEST(Families, TwoValueNeedsEllNotDividingR1) {
  const auto f7 = Field::make(7, 1);
  F11Params fp{3, 1, 3, f7->one(), f7->one()};
  try {
    construct_family(f7, fp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainCheckFailed);
  }
  // the map itself is the constant-on-cosets 3x^3 and is not a permutation
  const auto cs = make_cosets(f7, 3);
  const auto mp = CycloMap::monomial(cs, {1, 3, 3}, std::vector<Elem>(3, f7->one()));
  EXPECT_FALSE(check_main2(*monomial_spec(mp)).is_pp);
  EXPECT_FALSE(is_bijection_brute(mp).is_bijection);
}

TEST(Families, OddCosetSizeHalfStep) {
  const auto f16 = Field::make(2, 4);
  F16Params p;
  p.ell = 3;
  p.q0 = 2;
  p.e = {2, 2, 1};
  p.hhat = {Poly::parse(f16, "1"), Poly::parse(f16, "x"), Poly::parse(f16, "x")};
  p.k = {1, 4, 4};
  p.kp = {4, 4, 1};
  p.r = {3, 1, 3};
  p.t = {2, 2, 2};
  const auto r = construct_family(f16, p, true);
  EXPECT_TRUE(r.brute->is_bijection);
  EXPECT_EQ(r.predicted, r.brute->is_bijection);
}

TEST(Families, Quad2iAtZeroIsNotPP) {
  for (std::uint32_t m : {1u, 3u, 5u}) {
    const auto f = Field::make(3, m);
    F6Params p;
    p.preset = F6Preset::Quad2i;
    p.i = 0;
    const auto r = construct_family(f, p, true);
    EXPECT_FALSE(r.brute->is_bijection) << m;
    EXPECT_FALSE(r.predicted) << m;
  }
}

TEST(Families, DomainChecks) {
  const auto f5 = Field::make(5, 1);
  auto expect_domain = [](auto&& fn) {
    try {
      fn();
      ADD_FAILURE() << "no domain error";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DomainCheckFailed);
    }
  };
  expect_domain([&] { construct_family(f5, F4Params{f5->one(), f5->one(), f5->one(), 1}); });
  expect_domain([&] { construct_family(Field::make(5, 1), F10Params{1}); });
  expect_domain([&] { construct_family(Field::make(2, 3), F6Params{}); });
  EXPECT_THROW(construct_family(FamilyId::F3, f5, F4Params{f5->one(), f5->one(), f5->one(), 1}), Error);
}

TEST(Families, NamesRoundTrip) {
  for (int i = 1; i <= 17; ++i) {
    const auto id = static_cast<FamilyId>(i);
    EXPECT_EQ(parse_family_id(to_string(id)), id);
    EXPECT_EQ(parse_family_id(std::to_string(i)), id);
  }
  EXPECT_EQ(parse_family_id("f4"), FamilyId::F4);
  EXPECT_THROW(parse_family_id("F18"), Error);
  for (auto p : {F6Preset::Char2, F6Preset::Cubic3i, F6Preset::Hou, F6Preset::ThreeBranchEqual}) {
    EXPECT_EQ(parse_f6_preset(to_string(p)), p);
  }
  for (auto p : {F12Preset::General, F12Preset::Mod16, F12Preset::Mod25, F12Preset::ZhaHuThm11}) {
    EXPECT_EQ(parse_f12_preset(to_string(p)), p);
  }
  EXPECT_THROW(parse_f6_preset("nope"), Error);
}

TEST(Grid, FullF4GridOverGF9) {
  const Grid g = parse_grid("family=F4;p=3;m=2;alpha=*;beta=*;theta=*;t=1,2,3,5,7");
  EXPECT_EQ(g.family, FamilyId::F4);
  const auto fields = grid_fields(g);
  ASSERT_EQ(fields.size(), 1u);
  EXPECT_EQ(expand_grid(g, fields[0]).size(), 2560u);
  const auto sum = sweep_family(fields[0], g);
  EXPECT_EQ(sum.points, 2560u);
  EXPECT_EQ(sum.disagreements, 0u);
  EXPECT_EQ(sum.predicted_pp, sum.brute_pp);
  EXPECT_GT(sum.brute_pp, 0u);
}

TEST(Grid, SmallestFieldForModSixteen) {
  const Grid g = parse_grid("family=F12;p=17;ell=4;theta=*");
  const auto f17 = grid_fields(g)[0];
  const auto pts = expand_grid(g, f17);
  EXPECT_EQ(pts.size(), 2u);
  const auto sum = sweep_family(f17, g);
  EXPECT_EQ(sum.disagreements, 0u);
  EXPECT_EQ(sum.evaluated(), 2u);
}

TEST(Grid, EmptyGrid) {
  const Grid g = parse_grid("family=F12;p=5;ell=3;theta=*");
  EXPECT_TRUE(expand_grid(g, grid_fields(g)[0]).empty());
  const auto sum = sweep_family(grid_fields(g)[0], g);
  EXPECT_EQ(sum.points, 0u);
  EXPECT_EQ(sum.disagreements, 0u);
}

TEST(Grid, ParsingAndExpansion) {
  const Grid g = parse_grid("family=F8;p=7;A=1,2;r=1..3");
  const auto f7 = grid_fields(g)[0];
  const auto pts = expand_grid(g, f7);
  EXPECT_EQ(pts.size(), 8u * 27u);
  EXPECT_EQ(pts.front().at("A0"), "1");
  EXPECT_EQ(pts.front().at("r2"), "1");

  const Grid lists = parse_grid("family=F3;p=3,5;m=1..2;t=1;r=1");
  EXPECT_EQ(grid_fields(lists).size(), 4u);

  const Grid mod = parse_grid("family=F4;p=3;m=2;mod=[2,2,1];alpha=1;beta=1;theta=1;t=1");
  EXPECT_EQ(grid_fields(mod)[0]->modulus(), (std::vector<std::uint32_t>{2, 2, 1}));

  const Grid sampled = parse_grid("family=F4;p=3;m=3;alpha=*;beta=*;theta=*;t=1..20;samples=25");
  const auto f27 = grid_fields(sampled)[0];
  const auto s1 = expand_grid(sampled, f27, 3);
  EXPECT_EQ(s1.size(), 25u);
  EXPECT_EQ(s1, expand_grid(sampled, f27, 3));
  EXPECT_NE(s1, expand_grid(sampled, f27, 4));
  EXPECT_EQ(to_string(Assignment{{"a", "1"}, {"b", "x"}}), "a=1;b=x");

  EXPECT_THROW(parse_grid("p=3;t=1"), Error);
  EXPECT_THROW(parse_grid("family=F4;p=3;t=1;t=2"), Error);
  EXPECT_THROW(parse_grid("family=F4;p=3;bogus=1"), Error);
  EXPECT_THROW(parse_grid("family=F4;p=3;t"), Error);
  EXPECT_THROW(grid_fields(parse_grid("family=F4;p=3,5;m=1;mod=[1,1];t=1")), Error);
}

TEST(Grid, SweepSummaryIsDeterministic) {
  const Grid g = parse_grid("family=F5;p=3;m=3;alpha=*;beta=*;theta=*;t=1..7;samples=300");
  const auto f27 = grid_fields(g)[0];
  const auto a = sweep_family(f27, g, 5);
  const auto b = sweep_family(f27, g, 5);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.brute_pp, b.brute_pp);
  EXPECT_EQ(a.disagreements, 0u);
  SweepSummary total;
  total += a;
  total += b;
  EXPECT_EQ(total.points, 600u);
}
