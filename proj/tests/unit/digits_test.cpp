#include <gtest/gtest.h>

#include "collider/digits.hpp"
#include "collider/errors.hpp"
#include "collider/random.hpp"
#include "oracles.hpp"

using collider::BigNat;
using collider::digit_sum;

TEST(DigitSum, KnownValues) {
  EXPECT_EQ(digit_sum(BigNat(36), 2), 2u);
  EXPECT_EQ(digit_sum(BigNat(0), 3), 0u);
  EXPECT_EQ(digit_sum(BigNat(21), 3), 3u);
}

TEST(DigitSum, RejectsBaseBelowTwo) {
  EXPECT_THROW(digit_sum(BigNat(5), 1), collider::InvalidArgument);
  EXPECT_THROW(digit_sum(std::uint64_t{5}, 0), collider::InvalidArgument);
  EXPECT_THROW(collider::digit_sum_trunc(BigNat(5), 1, 3), collider::InvalidArgument);
}

TEST(DigitSum, MatchesDivisionOracleOnLargeValues) {
  auto rng = collider::make_rng(21);
  for (int i = 0; i < 300; ++i) {
    const BigNat n = collider::random_bits(rng, 1 + rng() % 3000);
    for (int b : {2, 3, 5, 10, 16}) {
      EXPECT_EQ(digit_sum(n, b), oracle::digit_sum(n.mpz(), static_cast<unsigned long>(b)));
    }
  }
}

TEST(DigitSum, FastU64PathMatchesOracle) {
  auto rng = collider::make_rng(22);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t n = rng() >> (rng() % 64);
    ASSERT_EQ(digit_sum(n, 3), oracle::digit_sum(n, 3)) << n;
    ASSERT_EQ(digit_sum(n, 2), oracle::digit_sum(n, 2)) << n;
    ASSERT_EQ(collider::f_value(n), oracle::f(n)) << n;
  }
  EXPECT_EQ(digit_sum(~0ULL, 3), oracle::digit_sum(~0ULL, 3));
}

TEST(DigitSum, Truncated) {
  EXPECT_EQ(collider::digit_sum_trunc(BigNat(13), 2, 3), 2u);
  EXPECT_EQ(collider::digit_sum_trunc(BigNat(5), 3, 1), 2u);
  EXPECT_EQ(collider::digit_sum_trunc(BigNat(123456), 7, 0), 0u);
}

TEST(DigitSum, TruncationShiftRecursion) {
  // s^(L+1)(2n) = s^(L)(n)
  auto rng = collider::make_rng(23);
  for (int i = 0; i < 500; ++i) {
    const BigNat n = collider::random_bits(rng, 80);
    const std::uint64_t L = rng() % 90;
    EXPECT_EQ(collider::digit_sum_trunc(n * BigNat(2), 2, L + 1), collider::digit_sum_trunc(n, 2, L));
  }
}

TEST(DigitSum, TruncationIsIdentityBelowThePower) {
  for (std::uint64_t n = 0; n < 3000; ++n) {
    for (int b : {2, 3}) {
      const std::uint64_t L = b == 2 ? 12 : 8;
      ASSERT_EQ(collider::digit_sum_trunc(BigNat(n), b, L), digit_sum(n, b));
    }
  }
}

TEST(FValue, KnownValues) {
  EXPECT_EQ(collider::f_value(BigNat(36)), 0);
  EXPECT_EQ(collider::f_value(BigNat(0)), 0);
  EXPECT_EQ(collider::f_value(BigNat(5)), -1);
}

TEST(DigitSum, Subadditive) {
  auto rng = collider::make_rng(24);
  for (int i = 0; i < 3000; ++i) {
    const BigNat a = collider::random_bits(rng, 1 + rng() % 200);
    const BigNat b = collider::random_bits(rng, 1 + rng() % 200);
    for (int base : {2, 3, 10}) {
      ASSERT_LE(digit_sum(a + b, base), digit_sum(a, base) + digit_sum(b, base));
    }
  }
}

TEST(DigitSum, InvariantUnderMultiplicationByBase) {
  for (std::uint64_t n = 0; n < 100000; ++n) {
    ASSERT_EQ(digit_sum(2 * n, 2), digit_sum(n, 2));
    ASSERT_EQ(digit_sum(3 * n, 3), digit_sum(n, 3));
  }
}

TEST(DigitSum, ColumnSumFormula) {
  for (std::uint64_t b : {2u, 3u}) {
    std::uint64_t power = 1;
    for (std::uint64_t L = 0; L <= 10; ++L, power *= b) {
      std::uint64_t total = 0;
      for (std::uint64_t n = 0; n < power; ++n) total += digit_sum(n, static_cast<int>(b));
      EXPECT_EQ(2 * total, L * power * (b - 1)) << "b=" << b << " L=" << L;
    }
  }
}

TEST(DigitString, TextForm) {
  EXPECT_EQ(collider::digits_of(BigNat(36), 2).to_text(), "100100");
  EXPECT_EQ(collider::digits_of(BigNat(21), 3).to_text(), "210");
  EXPECT_EQ(collider::digits_of(BigNat(0), 3).to_text(), "0");
  EXPECT_TRUE(collider::digits_of(BigNat(0), 5).digits.empty());
  EXPECT_EQ(collider::DigitString::parse("2020", 3), collider::digits_of(BigNat(60), 3));
  EXPECT_THROW(collider::DigitString::parse("123", 3), collider::InvalidArgument);
}

TEST(DigitString, RoundTripsRandomValues) {
  auto rng = collider::make_rng(25);
  for (int i = 0; i < 10000; ++i) {
    const BigNat n = collider::random_bits(rng, 1 + rng() % 1000);
    const int base = 2 + static_cast<int>(rng() % 35);
    const auto ds = collider::digits_of(n, base);
    ASSERT_TRUE(ds.digits.empty() || ds.digits.back() != 0);
    ASSERT_EQ(collider::from_digits(ds), n);
  }
}

TEST(CountBlocks, KnownValues) {
  EXPECT_EQ(collider::count_blocks(BigNat(182)), (collider::BlockCounts{3, 1}));
  EXPECT_EQ(collider::count_blocks(BigNat(0)), (collider::BlockCounts{0, 0}));
  EXPECT_EQ(collider::count_blocks(BigNat(5)), (collider::BlockCounts{2, 2}));
}

TEST(CountBlocks, MatchesStringScan) {
  auto rng = collider::make_rng(26);
  for (int i = 0; i < 2000; ++i) {
    const BigNat n = collider::random_bits(rng, 1 + rng() % 400);
    const std::string bin = n.to_string(2);
    std::uint64_t runs = 0;
    for (std::size_t k = 0; k < bin.size(); ++k) runs += bin[k] == '1' && (k == 0 || bin[k - 1] == '0');
    const std::string quad = n.to_string(4);
    const auto ones = static_cast<std::uint64_t>(std::count(quad.begin(), quad.end(), '1'));
    ASSERT_EQ(collider::count_blocks(n), (collider::BlockCounts{runs, n.is_zero() ? 0 : ones}));
  }
}

TEST(BinomialValuation, KnownValues) {
  auto v = collider::binomial_valuation_check(BigNat(4));
  EXPECT_EQ(v.v2, 1u);
  EXPECT_EQ(v.v3_twice, 0u);
  EXPECT_TRUE(v.identities_hold);
  v = collider::binomial_valuation_check(BigNat(5));
  EXPECT_EQ(v.v2, 2u);
  EXPECT_EQ(v.v3_twice, 4u);
  EXPECT_TRUE(v.identities_hold);
  v = collider::binomial_valuation_check(BigNat(1));
  EXPECT_EQ(v.v2, 1u);
  EXPECT_EQ(v.v3_twice, 0u);
  EXPECT_TRUE(v.identities_hold);
  EXPECT_THROW(collider::binomial_valuation_check(BigNat(0)), collider::InvalidArgument);
}

TEST(BinomialValuation, AgreesWithExactBinomialsUpTo2000) {
  for (unsigned long n = 1; n <= 2000; ++n) {
    const auto v = collider::binomial_valuation_check(BigNat(n));
    ASSERT_TRUE(v.identities_hold) << n;
    ASSERT_EQ(v.v2, oracle::central_binomial_valuation(n, 2)) << n;
    ASSERT_EQ(v.v3_twice, 2 * oracle::central_binomial_valuation(n, 3)) << n;
  }
}

TEST(BinomialValuation, TrialDivisionOracleAgreesOnSmallCases) {
  for (unsigned long n = 1; n <= 60; ++n) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), 2 * n, n);
    EXPECT_EQ(oracle::valuation_by_division(c, 2), oracle::central_binomial_valuation(n, 2));
    EXPECT_EQ(oracle::valuation_by_division(c, 3), oracle::central_binomial_valuation(n, 3));
  }
}

TEST(AdditionCarries, SchoolbookExamples) {
  EXPECT_EQ(collider::addition_carries(BigNat(1), BigNat(1), 2), 1u);
  EXPECT_EQ(collider::addition_carries(BigNat(7), BigNat(1), 2), 3u);
  EXPECT_EQ(collider::addition_carries(BigNat(20), BigNat(40), 3), 2u);  // 0202 + 1111 = 2020
}
