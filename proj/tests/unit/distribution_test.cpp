#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "collider/digits.hpp"
#include "collider/distribution.hpp"
#include "collider/errors.hpp"
#include "collider/random.hpp"
#include "oracles.hpp"

using collider::BigNat;
using collider::PhiMode;
using collider::Rational;

namespace {

std::map<std::int64_t, std::uint64_t> as_u64(const collider::DistTable& t) {
  std::map<std::int64_t, std::uint64_t> out;
  for (const auto& [j, c] : t.counts) {
    if (!c.is_zero()) out[j] = c.to_u64();
  }
  return out;
}

}  // namespace

TEST(PhiTable, ClosedFormAtShiftOne) {
  const auto table = collider::phi_table(BigNat(1), 2);
  EXPECT_EQ(as_u64(table), (std::map<std::int64_t, std::uint64_t>{{1, 2}, {0, 1}, {-2, 1}}));
  EXPECT_EQ(as_u64(collider::phi_table(BigNat(1), 2, PhiMode::bruteforce)), as_u64(table));
}

TEST(PhiTable, EvenShiftReducesToHalf) {
  const auto even = collider::phi_table(BigNat(2), 3);
  const auto half = collider::phi_table(BigNat(1), 2);
  EXPECT_TRUE(collider::same_distribution(even, half));
  for (const auto& [j, c] : half.counts) EXPECT_EQ(even.count(j), c * BigNat(2));
}

TEST(PhiTable, ShiftThreeLengthThree) {
  const std::map<std::int64_t, std::uint64_t> want{{2, 2}, {1, 1}, {0, 2}, {-1, 1}, {-2, 2}};
  EXPECT_EQ(as_u64(collider::phi_table(BigNat(3), 3, PhiMode::bruteforce)), want);
  EXPECT_EQ(as_u64(collider::phi_table(BigNat(3), 3)), want);
}

TEST(PhiTable, RecurrenceMatchesOracleExhaustivelyUpToTen) {
  for (unsigned L = 0; L <= 10; ++L) {
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << L); ++t) {
      ASSERT_EQ(as_u64(collider::phi_table(BigNat(t), L)), oracle::phi_counts(t, L)) << "t=" << t << " L=" << L;
    }
  }
}

TEST(PhiTable, TablesAreNormalizedAndCentered) {
  auto rng = collider::make_rng(31);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t L = 1 + rng() % 60;
    const BigNat t = collider::random_bits(rng, L);
    const auto table = collider::phi_table(t, L);
    EXPECT_EQ(table.total(), BigNat::pow2(L));
    mpz_class first = 0;
    for (const auto& [j, c] : table.counts) first += mpz_class(j) * c.mpz();
    EXPECT_EQ(first, 0);
  }
}

TEST(PhiTable, ZeroShiftIsPointMass) {
  const auto table = collider::phi_table(BigNat(0), 5);
  EXPECT_EQ(as_u64(table), (std::map<std::int64_t, std::uint64_t>{{0, 32}}));
}

TEST(PhiTable, BruteforceRefusesLargeLengths) {
  EXPECT_THROW(collider::phi_table(BigNat(1), collider::kBruteforceMaxL + 1, PhiMode::bruteforce),
               collider::ResourceLimit);
  EXPECT_NO_THROW(collider::phi_table(BigNat(12345), 200));
}

TEST(Omega, KnownValues) {
  EXPECT_NEAR(std::abs(collider::omega(BigNat(1), 0.5, 2)), 0.0, 1e-15);
  const auto w = collider::omega(BigNat(1), 0.5, 3);
  EXPECT_NEAR(w.real(), -0.5, 1e-15);
  EXPECT_NEAR(w.imag(), 0.0, 1e-15);
  const auto one = collider::omega(BigNat(77), 0.0, 9);
  EXPECT_EQ(one.real(), 1.0);
  EXPECT_EQ(one.imag(), 0.0);
}

TEST(Omega, RecurrenceAgreesWithDirectSum) {
  auto rng = collider::make_rng(32);
  for (int i = 0; i < 400; ++i) {
    const std::uint64_t L = rng() % 17;
    const BigNat t = L == 0 ? BigNat(0) : collider::random_bits(rng, L);
    const double theta = static_cast<double>(rng() % 1000) / 1000.0;
    const auto a = collider::omega(t, theta, L);
    const auto b = collider::omega(t, theta, L, collider::OmegaMode::direct);
    EXPECT_LE(std::abs(a - b), 1e-12);
    EXPECT_LE(std::abs(a), 1.0 + 1e-12);
  }
}

TEST(Moments, KnownValues) {
  EXPECT_EQ(collider::moments(BigNat(1), 2).m2, Rational(3, 2));
  EXPECT_EQ(collider::moments(BigNat(3), 3).m2, Rational(9, 4));
  EXPECT_EQ(collider::moments(BigNat(4), 5).m1, Rational(0));
  EXPECT_EQ(collider::moments(BigNat(0), 5).m2, Rational(0));
}

TEST(Moments, ShiftOneClosedForm) {
  for (unsigned L = 1; L <= 30; ++L) {
    Rational want(2);
    want -= Rational(mpz_class(1), mpz_class(1) << (L - 1));
    EXPECT_EQ(collider::moments(BigNat(1), L).m2, want) << L;
  }
}

TEST(Moments, SecondMomentMatchesOracleTables) {
  for (unsigned L = 1; L <= 9; ++L) {
    for (std::uint64_t t = 1; t < (std::uint64_t{1} << L); ++t) {
      mpz_class sq = 0;
      for (const auto& [j, c] : oracle::phi_counts(t, L)) sq += mpz_class(j * j) * c;
      Rational want(sq, mpz_class(1) << L);
      want.canonicalize();
      const auto mp = collider::moments(BigNat(t), L);
      ASSERT_EQ(mp.m2, want) << "t=" << t << " L=" << L;
      ASSERT_EQ(mp.m1, Rational(0));
    }
  }
}

TEST(M2Bound, Examples) {
  const auto one = collider::check_m2_bound(1);
  EXPECT_EQ(one.max_m2, Rational(1));
  EXPECT_TRUE(one.holds);
  EXPECT_TRUE(collider::check_m2_bound(3).holds);
  const auto twelve = collider::check_m2_bound(12);
  EXPECT_TRUE(twelve.holds);
  EXPECT_LE(twelve.max_m2, Rational(24));
  EXPECT_EQ(collider::moments(BigNat(twelve.witness_t), 12).m2, twelve.max_m2);
  EXPECT_THROW(collider::check_m2_bound(collider::kM2BoundMaxNu + 1), collider::ResourceLimit);
}

TEST(OmegaBlockBound, Examples) {
  const auto r = collider::check_omega_block_bound(BigNat(1), 0.5, 3);
  EXPECT_NEAR(r.lhs, 0.5, 1e-15);
  EXPECT_EQ(r.rhs, 1.0);
  EXPECT_EQ(r.blocks, 0u);
  EXPECT_TRUE(r.holds);

  const auto zero = collider::check_omega_block_bound(BigNat(45), 0.0, 7);
  EXPECT_NEAR(zero.lhs, 1.0, 1e-15);
  EXPECT_EQ(zero.rhs, 1.0);
  EXPECT_TRUE(zero.holds);

  const auto t21 = collider::check_omega_block_bound(BigNat(21), 1.0 / 3.0, 8);
  EXPECT_EQ(t21.blocks, 1u);
  EXPECT_TRUE(t21.holds);

  EXPECT_THROW(collider::check_omega_block_bound(BigNat(8), 0.1, 3), collider::InvalidArgument);
}

TEST(OmegaBlockBound, HoldsOnRandomTriples) {
  auto rng = collider::make_rng(33);
  for (int i = 0; i < 3000; ++i) {
    const std::uint64_t L = 1 + rng() % 20;
    const BigNat t = collider::random_bits(rng, L);
    const double theta = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    ASSERT_TRUE(collider::check_omega_block_bound(t, theta, L).holds);
  }
}

TEST(DistanceToInteger, Values) {
  EXPECT_DOUBLE_EQ(collider::distance_to_integer(0.25), 0.25);
  EXPECT_DOUBLE_EQ(collider::distance_to_integer(0.75), 0.25);
  EXPECT_DOUBLE_EQ(collider::distance_to_integer(2.5), 0.5);
  EXPECT_DOUBLE_EQ(collider::distance_to_integer(-0.1), 0.1);
}
