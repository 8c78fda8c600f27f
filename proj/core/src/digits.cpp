#include "collider/digits.hpp"

#include <algorithm>
#include <limits>

#include "collider/errors.hpp"

namespace collider {
namespace {

void require_base(int base) {
  if (base < 2) throw InvalidArgument("invalid base " + std::to_string(base) + " (need base >= 2)");
}

constexpr std::string_view kDigitChars = "0123456789abcdefghijklmnopqrstuvwxyz";

// Largest power of `base` that fits in an unsigned long, and its exponent.
std::pair<unsigned long, int> limb_power(int base) {
  unsigned long p = static_cast<unsigned long>(base);
  int k = 1;
  while (p <= std::numeric_limits<unsigned long>::max() / static_cast<unsigned long>(base)) {
    p *= static_cast<unsigned long>(base);
    ++k;
  }
  return {p, k};
}

// Digits for bases mpz_get_str cannot render: peel limb-sized chunks.
std::vector<std::uint32_t> digits_by_division(const BigNat& n, int base) {
  std::vector<std::uint32_t> out;
  const auto [chunk, per_chunk] = limb_power(base);
  mpz_class v = n.mpz();
  while (sgn(v) != 0) {
    unsigned long r = mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), chunk);
    for (int i = 0; i < per_chunk; ++i) {
      out.push_back(static_cast<std::uint32_t>(r % static_cast<unsigned long>(base)));
      r /= static_cast<unsigned long>(base);
    }
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::uint32_t char_value(char c) {
  if (c >= '0' && c <= '9') return static_cast<std::uint32_t>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<std::uint32_t>(c - 'a' + 10);
  if (c >= 'A' && c <= 'Z') return static_cast<std::uint32_t>(c - 'A' + 10);
  return 0xffffffffu;
}

}  // namespace

std::string DigitString::to_text() const {
  if (base > 36) throw InvalidArgument("no text form for base " + std::to_string(base));
  if (digits.empty()) return "0";
  std::string s;
  s.reserve(digits.size());
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) s.push_back(kDigitChars[*it]);
  return s;
}

DigitString DigitString::parse(std::string_view text, int base) {
  require_base(base);
  if (base > 36) throw InvalidArgument("no text form for base " + std::to_string(base));
  if (text.empty()) throw InvalidArgument("empty digit string");
  DigitString ds{base, {}};
  ds.digits.reserve(text.size());
  for (auto it = text.rbegin(); it != text.rend(); ++it) {
    const std::uint32_t d = char_value(*it);
    if (d >= static_cast<std::uint32_t>(base)) {
      throw InvalidArgument("digit '" + std::string(1, *it) + "' out of range for base " + std::to_string(base));
    }
    ds.digits.push_back(d);
  }
  while (!ds.digits.empty() && ds.digits.back() == 0) ds.digits.pop_back();
  return ds;
}

DigitString digits_of(const BigNat& n, int base) {
  require_base(base);
  DigitString ds{base, {}};
  if (n.is_zero()) return ds;
  if (base <= 36) {
    const std::string s = n.to_string(base);
    ds.digits.reserve(s.size());
    for (auto it = s.rbegin(); it != s.rend(); ++it) ds.digits.push_back(char_value(*it));
  } else {
    ds.digits = digits_by_division(n, base);
  }
  return ds;
}

BigNat from_digits(const DigitString& ds) {
  require_base(ds.base);
  mpz_class v = 0;
  for (auto it = ds.digits.rbegin(); it != ds.digits.rend(); ++it) {
    if (*it >= static_cast<std::uint32_t>(ds.base)) throw InvalidArgument("digit out of range");
    v *= ds.base;
    v += *it;
  }
  return BigNat(v);
}

std::uint64_t digit_sum(const BigNat& n, int base) {
  require_base(base);
  if (base == 2) return n.popcount();
  if (n.fits_u64()) return digit_sum(n.to_u64(), base);
  if (base <= 36) {
    const std::string s = n.to_string(base);
    std::uint64_t sum = 0;
    for (char c : s) sum += char_value(c);
    return sum;
  }
  std::uint64_t sum = 0;
  for (auto d : digits_by_division(n, base)) sum += d;
  return sum;
}

std::uint64_t digit_sum(std::uint64_t n, int base) {
  require_base(base);
  if (base == 2) return static_cast<std::uint64_t>(std::popcount(n));
  if (base == 3) return detail::ternary_sum_u64(n);
  const auto b = static_cast<std::uint64_t>(base);
  std::uint64_t sum = 0;
  while (n != 0) {
    sum += n % b;
    n /= b;
  }
  return sum;
}

std::uint64_t digit_sum_trunc(const BigNat& n, int base, std::uint64_t length) {
  require_base(base);
  if (base == 2) return n.low_bits(length).popcount();
  const BigNat modulus = BigNat::pow(static_cast<std::uint64_t>(base), length);
  return digit_sum(n % modulus, base);
}

std::int64_t f_value(const BigNat& n) {
  return static_cast<std::int64_t>(digit_sum(n, 2)) - static_cast<std::int64_t>(digit_sum(n, 3));
}

BlockCounts count_blocks(const BigNat& n) {
  BlockCounts out;
  if (n.is_zero()) return out;
  // A block starts at every set bit whose lower neighbour is clear.
  mpz_class shifted = n.mpz() << 1;
  mpz_class starts;
  mpz_com(shifted.get_mpz_t(), shifted.get_mpz_t());
  mpz_and(starts.get_mpz_t(), n.mpz().get_mpz_t(), shifted.get_mpz_t());
  out.one_blocks = mpz_popcount(starts.get_mpz_t());
  const std::string base4 = n.to_string(4);
  out.base4_ones = static_cast<std::uint64_t>(std::count(base4.begin(), base4.end(), '1'));
  return out;
}

std::uint64_t addition_carries(const BigNat& lhs, const BigNat& rhs, int base) {
  require_base(base);
  const DigitString a = digits_of(lhs, base);
  const DigitString b = digits_of(rhs, base);
  const std::size_t len = std::max(a.digits.size(), b.digits.size());
  std::uint64_t carries = 0;
  std::uint32_t carry = 0;
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint32_t x = i < a.digits.size() ? a.digits[i] : 0;
    const std::uint32_t y = i < b.digits.size() ? b.digits[i] : 0;
    carry = (x + y + carry) >= static_cast<std::uint32_t>(base) ? 1 : 0;
    carries += carry;
  }
  return carries;
}

ValuationCheck binomial_valuation_check(const BigNat& n) {
  if (n.is_zero()) throw InvalidArgument("binomial_valuation_check requires n >= 1");
  ValuationCheck out;
  out.v2 = addition_carries(n, n, 2);
  out.v3_twice = 2 * addition_carries(n, n, 3);
  const auto s3n = static_cast<std::int64_t>(digit_sum(n, 3));
  const auto s3_2n = static_cast<std::int64_t>(digit_sum(n + n, 3));
  out.identities_hold = out.v2 == digit_sum(n, 2) &&
                        static_cast<std::int64_t>(out.v3_twice) == 2 * s3n - s3_2n;
  return out;
}

}  // namespace collider
