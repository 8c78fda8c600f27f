#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "collider/bignat.hpp"
#include "collider/constructor.hpp"
#include "collider/distribution.hpp"
#include "collider/random.hpp"

namespace collider {

struct ConcentrationReport {
  std::uint64_t samples = 0;
  std::map<std::int64_t, std::uint64_t> histogram;  // f value -> occurrences
  std::int64_t window = 0;                          // J m
  double inside_fraction = 0.0;                     // share of |f| <= J m
  double mean = 0.0;
  double sd = 0.0;

  // Centres of the two digit-sum halves along the progression.
  double E2 = 0.0;      // (1/2) log_2 N - nu/2
  double E3 = 0.0;      // log_3 N - beta - zeta
  double center = 0.0;  // E2 + s_2(r_2) - E3 - s_3(L), equal to zeta - zeta0

  std::uint64_t alpha = 0;   // beta + zeta
  std::uint64_t kappa2 = 0;  // min{m : 2^m >= 3^alpha}
  double sigma = 0.0;        // b_2 / 2^kappa2
  double rho = 0.0;          // 3^alpha / 2^kappa2
  std::uint64_t T = 0;       // min{T : 2^T >= 2 rho k_lo + 1}
};

/// f(L + modulus k) for `samples` k drawn uniformly from I. The sample
/// stream is split over 16 fixed lanes, so `threads` does not change the
/// result.
ConcentrationReport sample_concentration(const ProgressionSpec& spec, std::uint64_t samples, std::uint64_t seed,
                                         unsigned threads = 1);

struct FairShareReport {
  double ratio = 0.0;
  double expected = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

/// Fraction of sampled k with f(L + modulus k) = 0 mod m.
FairShareReport fair_share(const ProgressionSpec& spec, std::uint64_t m, std::uint64_t samples, std::uint64_t seed,
                           unsigned threads = 1);

inline constexpr std::uint64_t kOrthogonalityMaxInterval = 1'000'000;

struct OrthogonalityReport {
  std::uint64_t interval = 0;
  std::uint64_t p_direct = 0;
  double p_reconstructed = 0.0;
};

/// With b_2 = L / modulus2 and g(k) = s_2(b_2 + modulus3 k) - s_3(modulus2 k),
/// counts k in [k_lo, k_hi) with g(k) = t mod m directly and through
/// |I|/m + (1/m) sum_{0<b<m} e(-bt/m) S_0(b/m), S_0(x) = sum_k e(x g(k)).
OrthogonalityReport exp_sum_orthogonality(const BigNat& L, const BigNat& modulus2, const BigNat& modulus3,
                                          std::uint64_t k_lo, std::uint64_t k_hi, std::uint64_t m, std::int64_t t);

inline constexpr unsigned kHoeffdingMaxT = 40;

struct HoeffdingReport {
  Rational empirical;  // 2^-T #{n < 2^T : |s_2(n) - T/2| >= t}
  double bound = 0.0;  // 2 exp(-2 t^2 / T)
  bool holds = false;
};

HoeffdingReport hoeffding_tail(unsigned T, double t);

inline constexpr std::uint64_t kGelfondMaxN = 1'000'000'000;

struct GelfondReport {
  std::vector<std::vector<std::uint64_t>> counts;  // [s_2 mod m1][s_3 mod m2]
  double expected = 0.0;                           // N / (m1 m2)
  double max_relative_deviation = 0.0;
  bool condition_ok = true;  // gcd(m2, 2) = 1
};

GelfondReport gelfond_counts(std::uint64_t N, std::uint64_t m1, std::uint64_t m2, unsigned threads = 1);

struct FitResult {
  std::vector<std::pair<double, double>> points;  // (log N, log count)
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares line through (log N_i, log count_i); points with a zero
/// count are dropped. Needs two distinct usable abscissae.
FitResult fit_exponent(const std::vector<std::pair<double, double>>& checkpoints);

}  // namespace collider
