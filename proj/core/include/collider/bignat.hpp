#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace collider {

/// Arbitrary-precision nonnegative integer.
///
/// A value type over GMP's mpz_class that refuses to go negative: the
/// subtraction operators throw InvalidArgument on underflow. Every integer
/// the construction handles (n, N, a, K, L, d_j, moduli) is a BigNat.
class BigNat {
 public:
  BigNat() = default;
  BigNat(std::uint64_t value);  // NOLINT(google-explicit-constructor)
  explicit BigNat(const mpz_class& value);

  /// Decimal, or hexadecimal with a `0x` prefix. Rejects signs and junk.
  static BigNat parse(std::string_view text);
  static BigNat from_string(std::string_view digits, int base);

  static BigNat pow(std::uint64_t base, std::uint64_t exponent);
  static BigNat pow2(std::uint64_t exponent);

  std::string to_string(int base = 10) const;

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_odd() const { return mpz_odd_p(value_.get_mpz_t()) != 0; }
  bool bit(std::size_t index) const;

  /// Number of significant bits; 0 for zero.
  std::size_t bit_length() const;
  std::uint64_t popcount() const;

  bool fits_u64() const;
  /// Throws InvalidArgument when the value does not fit.
  std::uint64_t to_u64() const;
  std::uint64_t mod_u64(std::uint64_t modulus) const;

  /// Natural and base-2 logarithms accurate to double precision for any
  /// size (bit length plus leading-limb mantissa). Zero maps to -inf.
  double log() const;
  double log2() const;

  /// n mod 2^bits.
  BigNat low_bits(std::size_t bits) const;

  const mpz_class& mpz() const { return value_; }

  BigNat& operator+=(const BigNat& rhs);
  BigNat& operator-=(const BigNat& rhs);
  BigNat& operator*=(const BigNat& rhs);
  BigNat& operator/=(const BigNat& rhs);
  BigNat& operator%=(const BigNat& rhs);
  BigNat& operator<<=(std::size_t shift);
  BigNat& operator>>=(std::size_t shift);

  friend BigNat operator+(BigNat lhs, const BigNat& rhs) { return lhs += rhs; }
  friend BigNat operator-(BigNat lhs, const BigNat& rhs) { return lhs -= rhs; }
  friend BigNat operator*(BigNat lhs, const BigNat& rhs) { return lhs *= rhs; }
  friend BigNat operator/(BigNat lhs, const BigNat& rhs) { return lhs /= rhs; }
  friend BigNat operator%(BigNat lhs, const BigNat& rhs) { return lhs %= rhs; }
  friend BigNat operator<<(BigNat lhs, std::size_t shift) { return lhs <<= shift; }
  friend BigNat operator>>(BigNat lhs, std::size_t shift) { return lhs >>= shift; }

  friend bool operator==(const BigNat& lhs, const BigNat& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigNat& lhs, const BigNat& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpz_class value_;
};

/// Ceiling division for nonnegative operands; divisor must be nonzero.
BigNat ceil_div(const BigNat& numerator, const BigNat& divisor);

/// Modular inverse of `value` modulo `modulus`; throws if not invertible.
BigNat mod_inverse(const BigNat& value, const BigNat& modulus);

std::string to_string(const BigNat& n);
std::ostream& operator<<(std::ostream& os, const BigNat& n);

}  // namespace collider
