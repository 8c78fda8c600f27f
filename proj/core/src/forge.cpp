#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "collider/collisions.hpp"
#include "collider/digits.hpp"
#include "collider/errors.hpp"
#include "parallel.hpp"
#include "sampling.hpp"

namespace collider {
namespace {

struct LaneDraw {
  BigNat k;
  BigNat n;
  std::int64_t f = 0;
};

std::string failure_detail(const ProgressionSpec& spec, std::uint64_t samples, double sum, double sum_sq,
                           std::uint64_t inside) {
  const double mean = sum / static_cast<double>(samples);
  const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  const double sd = std::sqrt(var);
  const auto J = spec.family.params.J;
  const auto m = static_cast<double>(spec.family.params.m);
  // Gaussian local-limit guess at the per-sample hit probability.
  double rate = 0.0;
  if (sd > 0.0) {
    for (std::int64_t j = -J; j <= J; ++j) {
      const double z = (static_cast<double>(j) * m + mean) / sd;
      rate += std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
    }
  }
  std::ostringstream os;
  os << "samples=" << samples << " mean_f=" << mean << " sd_f=" << sd
     << " inside_fraction=" << static_cast<double>(inside) / static_cast<double>(samples)
     << " estimated_hit_rate=" << rate;
  return os.str();
}

}  // namespace

Certificate forge_collision(const ProgressionSpec& spec, const ForgeOptions& options) {
  if (options.budget < 1) throw InvalidArgument("forge budget must be >= 1");
  if (spec.k_lo >= spec.k_hi) throw EmptyInterval("sampling interval I is empty");
  const ShiftFamily& fam = spec.family;
  const std::int64_t J = fam.params.J;
  const auto m = static_cast<std::int64_t>(fam.params.m);
  const BigNat width = spec.interval_size();

  std::array<Rng, detail::kSampleLanes> rngs;
  for (std::size_t l = 0; l < rngs.size(); ++l) rngs[l] = detail::lane_rng(options.seed, l);
  std::array<LaneDraw, detail::kSampleLanes> draws;

  std::uint64_t samples = 0;
  std::uint64_t inside = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  while (samples < options.budget) {
    const auto lanes = static_cast<std::size_t>(
        std::min<std::uint64_t>(detail::kSampleLanes, options.budget - samples));
    detail::parallel_for(lanes, options.threads, [&](std::size_t l) {
      LaneDraw& d = draws[l];
      d.k = detail::draw_k(rngs[l], spec, width);
      d.n = spec.element(d.k);
      d.f = f_value(d.n);
    });
    for (std::size_t l = 0; l < lanes; ++l) {
      const LaneDraw& d = draws[l];
      ++samples;
      sum += static_cast<double>(d.f);
      sum_sq += static_cast<double>(d.f) * static_cast<double>(d.f);
      if (d.f > J * m || d.f < -J * m) continue;
      ++inside;
      if (d.f % m != 0) continue;

      const std::int64_t j = -d.f / m;
      Certificate cert;
      cert.spec = spec;
      cert.k = d.k;
      cert.j = j;
      cert.samples = samples;
      BigNat n = d.n + fam.d[j];
      if (f_value(n) != fam.xi[j]) {
        throw std::logic_error("difference property failed while forging at j = " + std::to_string(j));
      }
      if (fam.xi[j] == 1) {
        n = n + BigNat(1);
        cert.used_plus_one = true;
      }
      cert.record = {n, digit_sum(n, 2), digit_sum(n, 3), CollisionKind::exact};
      const auto bad = certificate_violations(cert);
      if (!bad.empty()) throw std::logic_error("forged certificate does not replay: " + bad.front());
      return cert;
    }
  }
  throw SearchFailure("no collision found within " + std::to_string(options.budget) + " samples",
                      failure_detail(spec, samples, sum, sum_sq, inside));
}

std::vector<std::string> certificate_violations(const Certificate& cert) {
  std::vector<std::string> bad;
  const ShiftFamily& fam = cert.spec.family;
  if (cert.j < -fam.params.J || cert.j > fam.params.J) {
    bad.push_back("shift index j out of range");
    return bad;
  }
  BigNat n = cert.spec.element(cert.k) + fam.d[cert.j];
  if (cert.used_plus_one) {
    if (n.mod_u64(12) != 9) bad.push_back("n - 1 is not 9 mod 12");
    n = n + BigNat(1);
  }
  if (n != cert.record.n) bad.push_back("L + modulus k + d_j (+1) does not reproduce n");
  const std::uint64_t s2 = digit_sum(cert.record.n, 2);
  const std::uint64_t s3 = digit_sum(cert.record.n, 3);
  if (s2 != cert.record.s2 || s3 != cert.record.s3) bad.push_back("recorded digit sums are stale");
  if (s2 != s3) bad.push_back("s_2(n) != s_3(n)");
  if (cert.k < cert.spec.k_lo || cert.k >= cert.spec.k_hi) bad.push_back("k lies outside I");
  return bad;
}

}  // namespace collider
