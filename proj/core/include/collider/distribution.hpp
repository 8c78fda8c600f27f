#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>

#include "collider/bignat.hpp"

namespace collider {

using Rational = mpq_class;

enum class PhiMode { recurrence, bruteforce };
enum class OmegaMode { recurrence, direct };

/// Exact occurrence counts of s_2^(L)(n+t) - s_2^(L)(n) over 0 <= n < 2^L.
/// counts[j] / 2^L is the probability mass phi(j, t, L); zero counts are
/// not stored. Invariants: total() == 2^L and sum_j j*counts[j] == 0.
struct DistTable {
  BigNat t;
  std::uint64_t L = 0;
  std::map<std::int64_t, BigNat> counts;

  BigNat total() const;
  BigNat count(std::int64_t j) const;
  Rational probability(std::int64_t j) const;

  friend bool operator==(const DistTable&, const DistTable&) = default;
};

/// True when both tables describe the same probability mass function,
/// regardless of their (t, L) labels.
bool same_distribution(const DistTable& a, const DistTable& b);

/// Largest L accepted by the brute-force mode.
inline constexpr std::uint64_t kBruteforceMaxL = 40;

/// phi(., t, L). The recurrence mode walks the (t, L) DAG with memoisation,
/// seeded by the closed form at t = 1; t is reduced mod 2^L first, and t = 0
/// is the point mass at 0. Bruteforce evaluates the definition (L <= 40).
DistTable phi_table(const BigNat& t, std::uint64_t L, PhiMode mode = PhiMode::recurrence);

/// omega_t(theta, L) = sum_j phi(j,t,L) e(j theta), e(x) = exp(2 pi i x).
/// `direct` sums over the brute-force table and inherits its L limit.
std::complex<double> omega(const BigNat& t, double theta, std::uint64_t L,
                           OmegaMode mode = OmegaMode::recurrence);

struct MomentPair {
  Rational m1;
  Rational m2;
};

/// First and second moments of phi(., t, L), exact, from the moment
/// recurrences. t = 0 gives (0, 0).
MomentPair moments(const BigNat& t, std::uint64_t L);

struct M2BoundReport {
  Rational max_m2;
  std::uint64_t witness_t = 0;
  bool holds = false;
};

inline constexpr std::uint64_t kM2BoundMaxNu = 16;

/// Exhaustive check of m_2(t, nu) <= 2 nu over 1 <= t < 2^nu (nu <= 16).
M2BoundReport check_m2_bound(std::uint64_t nu);

struct OmegaBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  std::uint64_t blocks = 0;  // B, largest with 2B + 1 <= number of 1-blocks of t
  bool holds = false;
};

/// |omega_t(theta, L)| <= (1 - ||theta||^2 / 2)^B. Requires t < 2^L.
OmegaBoundReport check_omega_block_bound(const BigNat& t, double theta, std::uint64_t L);

/// Distance from x to the nearest integer.
double distance_to_integer(double x);

}  // namespace collider
