#include <gtest/gtest.h>

#include <set>

#include "cyclo/arith.hpp"
#include "cyclo/cosets.hpp"
#include "support.hpp"

using namespace cyclo;
using namespace testing_support;

namespace {

std::set<std::uint32_t> codes(const std::vector<Elem>& v) {
  std::set<std::uint32_t> out;
  for (const auto& e : v) out.insert(e.code());
  return out;
}

}  // namespace

TEST(Cosets, Examples) {
  const auto f7 = Field::make(7, 1);
  const auto cs = make_cosets(f7, 3);
  EXPECT_EQ(cs->s(), 2u);
  EXPECT_EQ(codes(cs->members(0)), (std::set<std::uint32_t>{1, 6}));
  EXPECT_EQ(cs->coset_of(f7->from_int(2)), 2u);
  EXPECT_EQ(cs->coset_of(f7->from_int(6)), 0u);
  EXPECT_EQ(make_cosets(f7, 1)->members(0).size(), 6u);

  const auto f9 = Field::make(3, 2);
  const auto sq = make_cosets(f9, 2);
  std::set<std::uint32_t> squares;
  for (int k = 0; k < 8; k += 2) squares.insert(f9->exp(k).code());
  EXPECT_EQ(codes(sq->members(0)), squares);
}

TEST(Cosets, GammaLiesInCosetOne) {
  for (auto [p, m] : small_fields()) {
    const auto f = Field::make(p, m);
    for (auto ell : arith::divisors(f->q() - 1)) {
      if (ell > 1) EXPECT_EQ(make_cosets(f, ell)->coset_of(f->gamma()), 1u);
    }
  }
}

TEST(Cosets, Errors) {
  const auto f7 = Field::make(7, 1);
  try {
    make_cosets(f7, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotADivisor);
  }
  EXPECT_THROW(make_cosets(f7, 0), Error);
  try {
    make_cosets(f7, 2)->coset_of(f7->zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroHasNoCoset);
  }
  const auto f8 = Field::make(2, 3);
  try {
    quadratic_character(*f8, f8->one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EvenCharacteristicField);
  }
}

TEST(Cosets, PartitionAndRootsOfUnity) {
  for (auto [p, m] : small_fields()) {
    const auto f = Field::make(p, m);
    for (auto ell : arith::divisors(f->q() - 1)) {
      const auto cs = make_cosets(f, ell);
      ASSERT_EQ(cs->ell() * cs->s(), f->q() - 1);
      // mu: ell distinct members, closed under products, zeta of order ell
      const auto mu = codes(cs->mu());
      ASSERT_EQ(mu.size(), ell);
      for (const auto& a : cs->mu()) {
        for (const auto& b : cs->mu()) ASSERT_TRUE(mu.count((a * b).code()));
      }
      ASSERT_TRUE(cs->zeta().pow(static_cast<std::int64_t>(ell)).is_one());
      for (auto d : arith::divisors(ell)) {
        if (d < ell) ASSERT_FALSE(cs->zeta().pow(static_cast<std::int64_t>(d)).is_one());
      }
      std::vector<int> seen(f->q(), 0);
      for (std::uint64_t i = 0; i < ell; ++i) {
        const auto mem = cs->members(i);
        ASSERT_EQ(mem.size(), cs->s());
        for (const auto& x : mem) {
          ASSERT_EQ(seen[x.code()]++, 0);
          ASSERT_EQ(cs->coset_of(x), i);
          ASSERT_EQ(f->dlog(x) % ell, i);
          ASSERT_EQ(x.pow(static_cast<std::int64_t>(cs->s())), cs->mu()[i]);
        }
      }
      for (std::uint32_t c = 1; c < f->q(); ++c) ASSERT_EQ(seen[c], 1);
    }
  }
}

TEST(QuadraticCharacter, Examples) {
  const auto f7 = Field::make(7, 1);
  EXPECT_EQ(quadratic_character(*f7, f7->from_int(2)), 1);
  EXPECT_EQ(quadratic_character(*f7, f7->from_int(3)), -1);
  EXPECT_EQ(quadratic_character(*f7, f7->zero()), 0);
  const auto f9 = Field::make(3, 2);
  EXPECT_EQ(quadratic_character(*f9, f9->from_int(2)), 1);
  for (auto [p, m] : small_fields()) {
    if (p == 2) continue;
    const auto f = Field::make(p, m);
    EXPECT_EQ(quadratic_character(*f, f->one()), 1);
  }
}

TEST(QuadraticCharacter, MultiplicativeAndMatchesSquares) {
  std::mt19937_64 rng(21);
  for (auto [p, m] : small_fields()) {
    if (p == 2) continue;
    const auto f = Field::make(p, m);
    std::vector<int> is_square(f->q(), 0);
    for (std::uint32_t c = 1; c < f->q(); ++c) is_square[(f->elem(c) * f->elem(c)).code()] = 1;
    for (std::uint32_t c = 1; c < f->q(); ++c) {
      ASSERT_EQ(quadratic_character(*f, f->elem(c)), is_square[c] ? 1 : -1);
    }
    for (int k = 0; k < 300; ++k) {
      const Elem a = random_elem(*f, rng, true), b = random_elem(*f, rng, true);
      ASSERT_EQ(quadratic_character(*f, a * b), quadratic_character(*f, a) * quadratic_character(*f, b));
    }
  }
}
