#include "collider/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "collider/digits.hpp"
#include "collider/errors.hpp"
#include "parallel.hpp"
#include "sampling.hpp"
#include "scan.hpp"

namespace collider {
namespace {

std::vector<std::int64_t> sample_f_values(const ProgressionSpec& spec, std::uint64_t samples, std::uint64_t seed,
                                          unsigned threads) {
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  if (spec.k_lo >= spec.k_hi) throw EmptyInterval("sampling interval I is empty");
  const BigNat width = spec.interval_size();
  std::vector<std::int64_t> out(samples);
  const auto lanes = static_cast<std::size_t>(std::min<std::uint64_t>(detail::kSampleLanes, samples));
  detail::parallel_for(lanes, threads, [&](std::size_t lane) {
    Rng rng = detail::lane_rng(seed, lane);
    for (std::uint64_t i = lane; i < samples; i += detail::kSampleLanes) {
      out[i] = f_value(spec.element(detail::draw_k(rng, spec, width)));
    }
  });
  return out;
}

// e(x) = exp(2 pi i x) for x = num/den, reduced first to keep the angle small.
std::complex<double> unit_root(std::int64_t num, std::uint64_t den) {
  const auto d = static_cast<std::int64_t>(den);
  const std::int64_t r = ((num % d) + d) % d;
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

ConcentrationReport sample_concentration(const ProgressionSpec& spec, std::uint64_t samples, std::uint64_t seed,
                                         unsigned threads) {
  const std::vector<std::int64_t> values = sample_f_values(spec, samples, seed, threads);
  const Params& p = spec.family.params;

  ConcentrationReport r;
  r.samples = samples;
  r.window = p.J * static_cast<std::int64_t>(p.m);
  std::uint64_t inside = 0;
  double sum = 0.0;
  for (auto v : values) {
    ++r.histogram[v];
    if (v >= -r.window && v <= r.window) ++inside;
    sum += static_cast<double>(v);
  }
  r.inside_fraction = static_cast<double>(inside) / static_cast<double>(samples);
  r.mean = sum / static_cast<double>(samples);
  double sq = 0.0;
  for (auto v : values) sq += (static_cast<double>(v) - r.mean) * (static_cast<double>(v) - r.mean);
  r.sd = std::sqrt(sq / static_cast<double>(samples));

  const double log3 = std::log(3.0);
  r.E2 = 0.5 * spec.N.log2() - static_cast<double>(p.nu) / 2.0;
  r.E3 = spec.N.log() / log3 - static_cast<double>(p.beta) - static_cast<double>(spec.zeta);
  r.center = r.E2 + static_cast<double>(digit_sum(spec.r2, 2)) - r.E3 -
             static_cast<double>(digit_sum(spec.family.L, 3));

  r.alpha = p.beta + spec.zeta;
  r.kappa2 = (BigNat::pow(3, r.alpha) - BigNat(1)).bit_length();
  const double log2_pow3 = static_cast<double>(r.alpha) * std::log2(3.0);
  r.rho = std::exp2(log2_pow3 - static_cast<double>(r.kappa2));
  r.sigma = spec.b2.is_zero() ? 0.0 : std::exp2(spec.b2.log2() - static_cast<double>(r.kappa2));
  if (!spec.k_lo.is_zero()) {
    const double log2_target = std::log2(r.rho) + spec.k_lo.log2() + 1.0;  // log_2(2 rho k_lo), +1 negligible
    r.T = static_cast<std::uint64_t>(std::max(0.0, std::ceil(log2_target)));
  }
  return r;
}

FairShareReport fair_share(const ProgressionSpec& spec, std::uint64_t m, std::uint64_t samples, std::uint64_t seed,
                           unsigned threads) {
  if (m < 1) throw InvalidArgument("m must be >= 1");
  const std::vector<std::int64_t> values = sample_f_values(spec, samples, seed, threads);
  FairShareReport r;
  r.samples = samples;
  const auto mm = static_cast<std::int64_t>(m);
  for (auto v : values) r.hits += v % mm == 0;
  r.ratio = static_cast<double>(r.hits) / static_cast<double>(samples);
  r.expected = 1.0 / static_cast<double>(m);
  return r;
}

OrthogonalityReport exp_sum_orthogonality(const BigNat& L, const BigNat& modulus2, const BigNat& modulus3,
                                          std::uint64_t k_lo, std::uint64_t k_hi, std::uint64_t m, std::int64_t t) {
  if (m < 1) throw InvalidArgument("m must be >= 1");
  if (modulus2.is_zero() || modulus3.is_zero()) throw InvalidArgument("moduli must be positive");
  if (k_hi < k_lo) throw InvalidArgument("k_hi must be >= k_lo");
  if (k_hi - k_lo > kOrthogonalityMaxInterval) {
    throw ResourceLimit("orthogonality interval exceeds " + std::to_string(kOrthogonalityMaxInterval));
  }
  OrthogonalityReport r;
  r.interval = k_hi - k_lo;

  std::map<std::int64_t, std::uint64_t> hist;
  BigNat x = L / modulus2 + modulus3 * BigNat(k_lo);
  BigNat y = modulus2 * BigNat(k_lo);
  for (std::uint64_t k = k_lo; k < k_hi; ++k) {
    ++hist[static_cast<std::int64_t>(digit_sum(x, 2)) - static_cast<std::int64_t>(digit_sum(y, 3))];
    x += modulus3;
    y += modulus2;
  }

  const auto mm = static_cast<std::int64_t>(m);
  for (const auto& [g, c] : hist) {
    if ((((g - t) % mm) + mm) % mm == 0) r.p_direct += c;
  }

  double recon = static_cast<double>(r.interval) / static_cast<double>(m);
  for (std::uint64_t b = 1; b < m; ++b) {
    const auto bb = static_cast<std::int64_t>(b);
    std::complex<double> s0 = 0.0;
    for (const auto& [g, c] : hist) s0 += static_cast<double>(c) * unit_root(bb * g, m);
    recon += (unit_root(-bb * t, m) * s0).real() / static_cast<double>(m);
  }
  r.p_reconstructed = recon;
  return r;
}

HoeffdingReport hoeffding_tail(unsigned T, double t) {
  if (T < 1 || T > kHoeffdingMaxT) {
    throw InvalidArgument("T must lie in [1, " + std::to_string(kHoeffdingMaxT) + "]");
  }
  if (!(t >= 0.0)) throw InvalidArgument("t must be >= 0");
  mpz_class count = 0;
  mpz_class binom;
  for (unsigned k = 0; k <= T; ++k) {
    if (std::abs(static_cast<double>(k) - static_cast<double>(T) / 2.0) >= t) {
      mpz_bin_uiui(binom.get_mpz_t(), T, k);
      count += binom;
    }
  }
  HoeffdingReport r;
  mpz_class denom = 1;
  denom <<= T;
  r.empirical = Rational(count, denom);
  r.empirical.canonicalize();
  r.bound = 2.0 * std::exp(-2.0 * t * t / static_cast<double>(T));
  r.holds = r.empirical.get_d() <= r.bound;
  return r;
}

GelfondReport gelfond_counts(std::uint64_t N, std::uint64_t m1, std::uint64_t m2, unsigned threads) {
  if (N < 1 || N > kGelfondMaxN) throw InvalidArgument("N must lie in [1, " + std::to_string(kGelfondMaxN) + "]");
  if (m1 < 1 || m2 < 1) throw InvalidArgument("moduli must be >= 1");
  const std::uint64_t chunks = (N - 1) / detail::kChunkSize + 1;
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(m1 * m2, 0));
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    const std::uint64_t lo = c * detail::kChunkSize;
    auto& cell = partial[c];
    detail::scan_range(lo, std::min(N, lo + detail::kChunkSize),
                       [&](std::uint64_t, std::uint32_t s2, std::uint32_t s3) { ++cell[(s2 % m1) * m2 + s3 % m2]; });
  });

  GelfondReport r;
  r.condition_ok = std::gcd(m2, std::uint64_t{2}) == 1;
  r.counts.assign(m1, std::vector<std::uint64_t>(m2, 0));
  for (const auto& cell : partial) {
    for (std::uint64_t i = 0; i < m1 * m2; ++i) r.counts[i / m2][i % m2] += cell[i];
  }
  r.expected = static_cast<double>(N) / static_cast<double>(m1 * m2);
  for (const auto& row : r.counts) {
    for (auto c : row) {
      r.max_relative_deviation =
          std::max(r.max_relative_deviation, std::abs(static_cast<double>(c) - r.expected) / r.expected);
    }
  }
  return r;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& checkpoints) {
  FitResult r;
  for (const auto& [n, c] : checkpoints) {
    if (n > 0.0 && c > 0.0) r.points.emplace_back(std::log(n), std::log(c));
  }
  if (r.points.size() < 2) throw InvalidArgument("exponent fit needs at least 2 points with positive counts");
  const double k = static_cast<double>(r.points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : r.points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : r.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0) throw InvalidArgument("exponent fit needs two distinct N values");
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : r.points) {
    const double e = y - (r.intercept + r.slope * x);
    ss_res += e * e;
  }
  r.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return r;
}

}  // namespace collider
