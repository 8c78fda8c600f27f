#include "collider/bignat.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "collider/errors.hpp"

namespace collider {

BigNat::BigNat(std::uint64_t value) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t),
                "BigNat assumes LP64 (unsigned long is 64-bit)");
  value_ = static_cast<unsigned long>(value);
}

BigNat::BigNat(const mpz_class& value) : value_(value) {
  if (sgn(value_) < 0) throw InvalidArgument("BigNat cannot hold a negative value");
}

BigNat BigNat::from_string(std::string_view digits, int base) {
  if (base < 2 || base > 62) throw InvalidArgument("unsupported base " + std::to_string(base));
  if (digits.empty()) throw InvalidArgument("empty integer literal");
  for (char c : digits) {
    const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (!ok) throw InvalidArgument("invalid character in integer literal: '" + std::string(digits) + "'");
  }
  mpz_class v;
  if (v.set_str(std::string(digits), base) != 0) {
    throw InvalidArgument("invalid base-" + std::to_string(base) + " literal: '" + std::string(digits) + "'");
  }
  return BigNat(v);
}

BigNat BigNat::parse(std::string_view text) {
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    return from_string(text.substr(2), 16);
  }
  return from_string(text, 10);
}

BigNat BigNat::pow(std::uint64_t base, std::uint64_t exponent) {
  BigNat r;
  mpz_ui_pow_ui(r.value_.get_mpz_t(), base, exponent);
  return r;
}

BigNat BigNat::pow2(std::uint64_t exponent) {
  BigNat r;
  mpz_setbit(r.value_.get_mpz_t(), exponent);
  return r;
}

std::string BigNat::to_string(int base) const { return value_.get_str(base); }

bool BigNat::bit(std::size_t index) const { return mpz_tstbit(value_.get_mpz_t(), index) != 0; }

std::size_t BigNat::bit_length() const {
  return is_zero() ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2);
}

std::uint64_t BigNat::popcount() const { return mpz_popcount(value_.get_mpz_t()); }

bool BigNat::fits_u64() const { return mpz_fits_ulong_p(value_.get_mpz_t()) != 0; }

std::uint64_t BigNat::to_u64() const {
  if (!fits_u64()) throw InvalidArgument("value " + to_string() + " does not fit in 64 bits");
  return mpz_get_ui(value_.get_mpz_t());
}

std::uint64_t BigNat::mod_u64(std::uint64_t modulus) const {
  if (modulus == 0) throw InvalidArgument("modulus must be nonzero");
  return mpz_fdiv_ui(value_.get_mpz_t(), modulus);
}

double BigNat::log2() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, value_.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

double BigNat::log() const { return log2() * std::log(2.0); }

BigNat BigNat::low_bits(std::size_t bits) const {
  BigNat r;
  mpz_tdiv_r_2exp(r.value_.get_mpz_t(), value_.get_mpz_t(), bits);
  return r;
}

BigNat& BigNat::operator+=(const BigNat& rhs) {
  value_ += rhs.value_;
  return *this;
}

BigNat& BigNat::operator-=(const BigNat& rhs) {
  if (cmp(value_, rhs.value_) < 0) throw InvalidArgument("BigNat subtraction underflow");
  value_ -= rhs.value_;
  return *this;
}

BigNat& BigNat::operator*=(const BigNat& rhs) {
  value_ *= rhs.value_;
  return *this;
}

BigNat& BigNat::operator/=(const BigNat& rhs) {
  if (rhs.is_zero()) throw InvalidArgument("division by zero");
  mpz_fdiv_q(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

BigNat& BigNat::operator%=(const BigNat& rhs) {
  if (rhs.is_zero()) throw InvalidArgument("division by zero");
  mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), rhs.value_.get_mpz_t());
  return *this;
}

BigNat& BigNat::operator<<=(std::size_t shift) {
  mpz_mul_2exp(value_.get_mpz_t(), value_.get_mpz_t(), shift);
  return *this;
}

BigNat& BigNat::operator>>=(std::size_t shift) {
  mpz_fdiv_q_2exp(value_.get_mpz_t(), value_.get_mpz_t(), shift);
  return *this;
}

BigNat ceil_div(const BigNat& numerator, const BigNat& divisor) {
  if (divisor.is_zero()) throw InvalidArgument("division by zero");
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), numerator.mpz().get_mpz_t(), divisor.mpz().get_mpz_t());
  return BigNat(q);
}

BigNat mod_inverse(const BigNat& value, const BigNat& modulus) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), value.mpz().get_mpz_t(), modulus.mpz().get_mpz_t()) == 0) {
    throw InvalidArgument("value is not invertible modulo " + modulus.to_string());
  }
  return BigNat(r);
}

std::string to_string(const BigNat& n) { return n.to_string(); }

std::ostream& operator<<(std::ostream& os, const BigNat& n) { return os << n.mpz(); }

}  // namespace collider
