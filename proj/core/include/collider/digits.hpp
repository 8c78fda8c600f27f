#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "collider/bignat.hpp"

namespace collider {

/// Little-endian digit expansion in a fixed base. No most-significant zero
/// except for the expansion of 0, which is the empty sequence.
struct DigitString {
  int base = 10;
  std::vector<std::uint32_t> digits;

  /// Most-significant first, no separators ("100100"); "0" for zero.
  /// Digits above 9 use lowercase letters, so bases up to 36 have a text form.
  std::string to_text() const;
  static DigitString parse(std::string_view text, int base);

  friend bool operator==(const DigitString&, const DigitString&) = default;
};

DigitString digits_of(const BigNat& n, int base);
BigNat from_digits(const DigitString& ds);

/// s_b(n). Throws InvalidArgument for base < 2.
std::uint64_t digit_sum(const BigNat& n, int base);
std::uint64_t digit_sum(std::uint64_t n, int base);

/// s_b(n mod b^length).
std::uint64_t digit_sum_trunc(const BigNat& n, int base, std::uint64_t length);

/// f(n) = s_2(n) - s_3(n); zero exactly on collisions.
std::int64_t f_value(const BigNat& n);
std::int64_t f_value(std::uint64_t n);

struct BlockCounts {
  std::uint64_t one_blocks = 0;  // maximal runs of 1 in binary
  std::uint64_t base4_ones = 0;  // digits equal to 1 in base 4
  friend bool operator==(const BlockCounts&, const BlockCounts&) = default;
};
BlockCounts count_blocks(const BigNat& n);

/// Number of carries produced by the schoolbook addition lhs + rhs in `base`.
std::uint64_t addition_carries(const BigNat& lhs, const BigNat& rhs, int base);

struct ValuationCheck {
  std::uint64_t v2 = 0;        // carries of n + n in base 2
  std::uint64_t v3_twice = 0;  // twice the carries of n + n in base 3
  bool identities_hold = false;
};

/// Kummer-style check of nu_2(C(2n,n)) = s_2(n) and
/// 2 nu_3(C(2n,n)) = 2 s_3(n) - s_3(2n). Requires n >= 1.
ValuationCheck binomial_valuation_check(const BigNat& n);

namespace detail {
inline std::uint64_t ternary_sum_u64(std::uint64_t n) {
  std::uint64_t s = 0;
  // Peel four ternary digits at a time.
  while (n >= 81) {
    const std::uint64_t q = n / 81;
    std::uint32_t r = static_cast<std::uint32_t>(n - q * 81);
    s += r % 3 + (r / 3) % 3 + (r / 9) % 3 + r / 27;
    n = q;
  }
  while (n != 0) {
    s += n % 3;
    n /= 3;
  }
  return s;
}
}  // namespace detail

inline std::int64_t f_value(std::uint64_t n) {
  return static_cast<std::int64_t>(std::popcount(n)) -
         static_cast<std::int64_t>(detail::ternary_sum_u64(n));
}

}  // namespace collider
