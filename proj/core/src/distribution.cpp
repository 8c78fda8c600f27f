#include "collider/distribution.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "collider/digits.hpp"
#include "collider/errors.hpp"

namespace collider {
namespace {

using Counts = std::map<std::int64_t, BigNat>;
using Key = std::pair<BigNat, std::uint64_t>;

std::complex<double> unit_phase(double x) {
  const double a = 2.0 * std::numbers::pi * x;
  return {std::cos(a), std::sin(a)};
}

Counts point_mass(std::uint64_t L) { return Counts{{0, BigNat::pow2(L)}}; }

// phi(j, 1, L) * 2^L: 2^(L+j-2) for -L+2 <= j <= 1, and 1 at j = -L.
Counts closed_form_t1(std::uint64_t L) {
  Counts c;
  const auto l = static_cast<std::int64_t>(L);
  c[-l] = BigNat(1);
  for (std::int64_t j = -l + 2; j <= 1; ++j) c[j] = BigNat::pow2(static_cast<std::uint64_t>(l + j - 2));
  return c;
}

class PhiRecurrence {
 public:
  const Counts& eval(const BigNat& t_raw, std::uint64_t L) {
    BigNat t = t_raw.low_bits(L);
    Key key{t, L};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Counts out;
    if (L == 0 || t.is_zero()) {
      out = point_mass(L);
    } else if (t == BigNat(1)) {
      out = closed_form_t1(L);
    } else if (!t.is_odd()) {
      for (const auto& [j, c] : eval(t >> 1, L - 1)) out[j] = c + c;
    } else {
      // phi(j, 2s+1, L) = phi(j-1, s, L-1)/2 + phi(j+1, s+1, L-1)/2
      const BigNat s = t >> 1;
      const Counts lo = eval(s, L - 1);
      const Counts hi = eval(s + BigNat(1), L - 1);
      for (const auto& [j, c] : lo) out[j + 1] += c;
      for (const auto& [j, c] : hi) out[j - 1] += c;
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  std::map<Key, Counts> memo_;
};

Counts phi_bruteforce(const BigNat& t, std::uint64_t L) {
  if (L > kBruteforceMaxL) {
    throw ResourceLimit("bruteforce phi limited to L <= " + std::to_string(kBruteforceMaxL) +
                        " (got L = " + std::to_string(L) + ")");
  }
  const std::uint64_t size = std::uint64_t{1} << L;
  const std::uint64_t mask = size - 1;
  const std::uint64_t shift = t.low_bits(L).to_u64();
  std::vector<std::uint64_t> hist(2 * L + 1, 0);
  for (std::uint64_t n = 0; n < size; ++n) {
    const int d = std::popcount((n + shift) & mask) - std::popcount(n);
    ++hist[static_cast<std::size_t>(d + static_cast<int>(L))];
  }
  Counts c;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist[i] != 0) c[static_cast<std::int64_t>(i) - static_cast<std::int64_t>(L)] = BigNat(hist[i]);
  }
  return c;
}

class OmegaRecurrence {
 public:
  explicit OmegaRecurrence(double theta) : up_(unit_phase(theta) * 0.5), down_(std::conj(up_)) {}

  std::complex<double> eval(const BigNat& t_raw, std::uint64_t L) {
    BigNat t = t_raw.low_bits(L);
    if (L == 0 || t.is_zero()) return {1.0, 0.0};
    Key key{t, L};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::complex<double> v;
    if (!t.is_odd()) {
      v = eval(t >> 1, L - 1);
    } else {
      const BigNat s = t >> 1;
      v = up_ * eval(s, L - 1) + down_ * eval(s + BigNat(1), L - 1);
    }
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  std::complex<double> up_;
  std::complex<double> down_;
  std::map<Key, std::complex<double>> memo_;
};

// 2^L m_1 and 2^L m_2 as exact (signed) integers.
struct ScaledMoments {
  mpz_class first;
  mpz_class second;
};

class MomentRecurrence {
 public:
  ScaledMoments eval(const BigNat& t_raw, std::uint64_t L) {
    BigNat t = t_raw.low_bits(L);
    if (L == 0 || t.is_zero()) return {0, 0};
    if (t == BigNat(1)) {
      // m_2(1, L) = 2 - 2^(1-L)
      mpz_class scaled = BigNat::pow2(L + 1).mpz() - 2;
      return {0, scaled};
    }
    Key key{t, L};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ScaledMoments v;
    if (!t.is_odd()) {
      const ScaledMoments h = eval(t >> 1, L - 1);
      v = {2 * h.first, 2 * h.second};
    } else {
      const BigNat s = t >> 1;
      const ScaledMoments a = eval(s, L - 1);
      const ScaledMoments b = eval(s + BigNat(1), L - 1);
      const mpz_class half = BigNat::pow2(L - 1).mpz();
      v.first = a.first + b.first;
      v.second = a.second + 2 * a.first + b.second - 2 * b.first + 2 * half;
    }
    memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  std::map<Key, ScaledMoments> memo_;
};

}  // namespace

BigNat DistTable::total() const {
  BigNat s;
  for (const auto& [j, c] : counts) s += c;
  return s;
}

BigNat DistTable::count(std::int64_t j) const {
  auto it = counts.find(j);
  return it == counts.end() ? BigNat{} : it->second;
}

Rational DistTable::probability(std::int64_t j) const {
  Rational r(count(j).mpz(), BigNat::pow2(L).mpz());
  r.canonicalize();
  return r;
}

bool same_distribution(const DistTable& a, const DistTable& b) {
  // Compare counts cross-multiplied by the other table's total.
  if (a.counts.size() != b.counts.size()) return false;
  const BigNat ta = a.total();
  const BigNat tb = b.total();
  for (const auto& [j, c] : a.counts) {
    auto it = b.counts.find(j);
    if (it == b.counts.end() || c * tb != it->second * ta) return false;
  }
  return true;
}

DistTable phi_table(const BigNat& t, std::uint64_t L, PhiMode mode) {
  DistTable table{t, L, {}};
  if (mode == PhiMode::bruteforce) {
    table.counts = phi_bruteforce(t, L);
  } else {
    PhiRecurrence rec;
    table.counts = rec.eval(t, L);
  }
  return table;
}

std::complex<double> omega(const BigNat& t, double theta, std::uint64_t L, OmegaMode mode) {
  if (mode == OmegaMode::recurrence) {
    OmegaRecurrence rec(theta);
    return rec.eval(t, L);
  }
  const Counts c = phi_bruteforce(t, L);
  const double scale = std::ldexp(1.0, -static_cast<int>(L));
  std::complex<double> sum{0.0, 0.0};
  for (const auto& [j, cnt] : c) {
    sum += unit_phase(static_cast<double>(j) * theta) * (cnt.mpz().get_d() * scale);
  }
  return sum;
}

MomentPair moments(const BigNat& t, std::uint64_t L) {
  MomentRecurrence rec;
  const ScaledMoments s = rec.eval(t, L);
  const mpz_class denom = BigNat::pow2(L).mpz();
  MomentPair out{Rational(s.first, denom), Rational(s.second, denom)};
  out.m1.canonicalize();
  out.m2.canonicalize();
  return out;
}

M2BoundReport check_m2_bound(std::uint64_t nu) {
  if (nu < 1) throw InvalidArgument("check_m2_bound requires nu >= 1");
  if (nu > kM2BoundMaxNu) {
    throw ResourceLimit("check_m2_bound is exhaustive and limited to nu <= " + std::to_string(kM2BoundMaxNu));
  }
  // scaled[t] = 2^L m_2(t, L) for 0 <= t <= 2^L, built level by level.
  std::vector<std::uint64_t> scaled{0, 0};
  for (std::uint64_t L = 0; L < nu; ++L) {
    const std::uint64_t size = std::uint64_t{1} << (L + 1);
    std::vector<std::uint64_t> next(size + 1, 0);
    for (std::uint64_t t = 1; t < size; ++t) {
      const std::uint64_t s = t >> 1;
      next[t] = (t & 1) ? scaled[s] + scaled[s + 1] + (std::uint64_t{1} << (L + 1)) : 2 * scaled[s];
    }
    scaled = std::move(next);
  }
  M2BoundReport report;
  std::uint64_t best = 0;
  for (std::uint64_t t = 1; t < (std::uint64_t{1} << nu); ++t) {
    if (scaled[t] > best || report.witness_t == 0) {
      best = scaled[t];
      report.witness_t = t;
    }
  }
  report.max_m2 = Rational(mpz_class(static_cast<unsigned long>(best)), BigNat::pow2(nu).mpz());
  report.max_m2.canonicalize();
  report.holds = report.max_m2 <= Rational(static_cast<unsigned long>(2 * nu));
  return report;
}

double distance_to_integer(double x) {
  const double frac = x - std::floor(x);
  return std::min(frac, 1.0 - frac);
}

OmegaBoundReport check_omega_block_bound(const BigNat& t, double theta, std::uint64_t L) {
  if (t >= BigNat::pow2(L)) {
    throw InvalidArgument("check_omega_block_bound requires t < 2^L");
  }
  OmegaBoundReport r;
  const std::uint64_t runs = count_blocks(t).one_blocks;
  r.blocks = runs >= 1 ? (runs - 1) / 2 : 0;
  r.lhs = std::abs(omega(t, theta, L, OmegaMode::recurrence));
  const double d = distance_to_integer(theta);
  r.rhs = std::pow(1.0 - d * d / 2.0, static_cast<double>(r.blocks));
  r.holds = r.lhs <= r.rhs + 1e-12;
  return r;
}

}  // namespace collider
