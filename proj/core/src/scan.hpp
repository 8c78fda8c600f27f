#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "collider/digits.hpp"

namespace collider::detail {

inline constexpr std::uint64_t kChunkSize = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kRecheckMask = (std::uint64_t{1} << 16) - 1;

// Base-3 digits of a running counter, updated by carry propagation.
class TernaryCounter {
 public:
  explicit TernaryCounter(std::uint64_t n) { reset(n); }

  void reset(std::uint64_t n) {
    digits_.fill(0);
    sum_ = 0;
    for (std::size_t i = 0; n != 0; ++i, n /= 3) {
      digits_[i] = static_cast<std::uint8_t>(n % 3);
      sum_ += digits_[i];
    }
  }

  void increment() {
    ++sum_;
    std::uint8_t* d = digits_.data();
    while (++*d == 3) {
      *d = 0;
      sum_ -= 2;
      ++d;
    }
  }

  std::uint32_t sum() const { return sum_; }

 private:
  std::array<std::uint8_t, 42> digits_{};  // 3^41 > 2^64
  std::uint32_t sum_ = 0;
};

// Calls visit(n, s2, s3) for every n in [lo, hi) and cross-checks the
// incremental ternary sum against a fresh computation every 2^16 steps.
template <class Visit>
void scan_range(std::uint64_t lo, std::uint64_t hi, Visit&& visit) {
  if (lo >= hi) return;
  TernaryCounter tern(lo);
  for (std::uint64_t n = lo;;) {
    visit(n, static_cast<std::uint32_t>(std::popcount(n)), tern.sum());
    if (++n == hi) break;
    tern.increment();
    if (((n - lo) & kRecheckMask) == 0 && tern.sum() != ternary_sum_u64(n)) {
      throw std::logic_error("incremental ternary digit sum diverged at n = " + std::to_string(n));
    }
  }
}

}  // namespace collider::detail
