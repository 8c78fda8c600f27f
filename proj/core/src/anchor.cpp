#include <cmath>
#include <functional>
#include <gmp.h>

#include "collider/constructor.hpp"
#include "collider/digits.hpp"

namespace collider {
namespace {

constexpr std::uint64_t kUniformStream = 0xa1c0;
constexpr std::uint64_t kSteerStream = 0x57ee;
constexpr std::uint64_t kRestartAfter = 250'000;

double unit_real(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

BigNat draw_anchor(Rng& rng, std::uint64_t nu) {
  if (nu < 3) return BigNat(1);
  return (random_bits(rng, nu - 3) << 2) + BigNat(1);
}

std::int64_t max_abs(const ByShift<std::int64_t>& v) {
  std::int64_t out = 0;
  for (auto x : v.values()) out = std::max(out, x < 0 ? -x : x);
  return out;
}

Anchor sample_anchor(const Params& params, const ByShift<BigNat>& shifts, std::uint64_t budget,
                     std::uint64_t seed, const std::function<bool(const ByShift<std::int64_t>&)>& accept,
                     const std::string& goal) {
  if (budget == 0) throw SearchFailure("anchor search budget is 0", goal);
  Rng rng = make_rng(seed, kUniformStream);
  std::int64_t best = -1;
  for (std::uint64_t draw = 1; draw <= budget; ++draw) {
    Anchor cand{draw_anchor(rng, params.nu), {}, draw};
    cand.delta = binary_deviations(cand.a, shifts, params.nu);
    if (accept(cand.delta)) return cand;
    const std::int64_t dev = max_abs(cand.delta);
    if (best < 0 || dev < best) best = dev;
  }
  throw SearchFailure("no anchor found after " + std::to_string(budget) + " draws",
                      goal + "; smallest max|delta_j| seen: " + std::to_string(best));
}

// Total excess of the ternary targets over eta/2.
class SteerCost {
 public:
  SteerCost(const Params& params, const ByShift<BigNat>& shifts) : params_(params) {
    for (const auto& d : shifts.values()) shifts_.push_back(d.mpz());
    mpz_init(tmp_);
  }
  ~SteerCost() { mpz_clear(tmp_); }
  SteerCost(const SteerCost&) = delete;
  SteerCost& operator=(const SteerCost&) = delete;

  std::int64_t operator()(const mpz_class& a) {
    const std::int64_t J = params_.J;
    const auto m = static_cast<std::int64_t>(params_.m);
    const auto half = static_cast<std::int64_t>(params_.eta / 2);
    const auto base = static_cast<std::int64_t>(mpz_popcount(a.get_mpz_t()));
    std::int64_t cost = 0;
    std::int64_t prev_delta = 0;
    std::int64_t prev_xi = 0;
    for (std::size_t i = 0; i < shifts_.size(); ++i) {
      mpz_add(tmp_, a.get_mpz_t(), shifts_[i].get_mpz_t());
      const std::int64_t delta = static_cast<std::int64_t>(mpz_popcount(tmp_)) - base;
      const std::int64_t t = i == 0 ? J * m + delta : -m - prev_delta + prev_xi + delta;
      const std::int64_t excess = (t < 0 ? -t : t) - half;
      if (excess > 0) cost += excess;
      prev_delta = delta;
      prev_xi = ((t % 2) + 2) % 2;
    }
    return cost;
  }

 private:
  const Params& params_;
  std::vector<mpz_class> shifts_;
  mpz_t tmp_;
};

}  // namespace

std::int64_t default_deviation_bound(std::uint64_t nu) {
  const auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(nu))));
  return std::max<std::int64_t>(4, 2 * r);
}

Anchor find_anchor(const Params& params, const ByShift<BigNat>& shifts, std::int64_t bound, std::uint64_t budget,
                   std::uint64_t seed) {
  if (bound < 0) throw InvalidArgument("deviation bound must be >= 0");
  return sample_anchor(
      params, shifts, budget, seed, [bound](const ByShift<std::int64_t>& d) { return max_abs(d) <= bound; },
      "target max|delta_j| <= " + std::to_string(bound));
}

Anchor steer_anchor(const Params& params, const ByShift<BigNat>& shifts, std::uint64_t budget, std::uint64_t seed) {
  if (budget == 0) throw SearchFailure("steering budget is 0", "no iterations allowed");
  const std::uint64_t nu = params.nu;
  SteerCost cost_of(params, shifts);
  Rng rng = make_rng(seed, kSteerStream);

  auto finish = [&](const mpz_class& a, std::uint64_t draws) {
    Anchor out{BigNat(a), {}, draws};
    out.delta = binary_deviations(out.a, shifts, nu);
    return out;
  };

  // Free bits are 2..nu-2; bits 0,1 fix a = 1 mod 4 and bit nu-1 stays clear.
  const std::uint64_t free_bits = nu >= 4 ? nu - 3 : 0;
  mpz_class a = draw_anchor(rng, nu).mpz();
  std::int64_t cost = cost_of(a);
  if (cost == 0) return finish(a, 1);
  if (free_bits == 0) throw SearchFailure("no free anchor bits to steer", "nu = " + std::to_string(nu));

  mpz_class best_a = a;
  std::int64_t best = cost;
  double temperature = 2.0;
  std::uint64_t since_improvement = 0;
  for (std::uint64_t it = 1; it <= budget; ++it) {
    const auto b1 = 2 + rng() % free_bits;
    mpz_combit(a.get_mpz_t(), b1);
    std::uint64_t b2 = 0;
    const bool pair = unit_real(rng) < 0.3;
    if (pair) {
      b2 = 2 + rng() % free_bits;
      mpz_combit(a.get_mpz_t(), b2);
    }
    const std::int64_t next = cost_of(a);
    const auto diff = static_cast<double>(next - cost);
    if (next <= cost || unit_real(rng) < std::exp(-diff / temperature)) {
      cost = next;
    } else {
      if (pair) mpz_combit(a.get_mpz_t(), b2);
      mpz_combit(a.get_mpz_t(), b1);
    }
    if (cost < best) {
      best = cost;
      best_a = a;
      since_improvement = 0;
      if (best == 0) return finish(best_a, it + 1);
    } else if (++since_improvement >= kRestartAfter) {
      a = draw_anchor(rng, nu).mpz();
      cost = cost_of(a);
      temperature = 2.0;
      since_improvement = 0;
    }
    temperature = std::max(0.05, temperature * 0.99997);
  }
  throw SearchFailure("anchor steering did not converge in " + std::to_string(budget) + " iterations",
                      "smallest total target excess: " + std::to_string(best));
}

ShiftFamily construct_family(const Params& params, const FamilyOptions& options) {
  ShiftFamily fam;
  fam.params = params;
  fam.d = build_shifts(params);
  const std::int64_t bound = options.bound.value_or(default_deviation_bound(params.nu));

  Anchor anchor;
  switch (options.strategy) {
    case AnchorStrategy::uniform:
      anchor = find_anchor(params, fam.d, bound, options.uniform_budget, options.seed);
      fam.anchor_strategy = AnchorStrategy::uniform;
      break;
    case AnchorStrategy::steered:
      anchor = steer_anchor(params, fam.d, options.steer_budget, options.seed);
      fam.anchor_strategy = AnchorStrategy::steered;
      break;
    case AnchorStrategy::automatic:
      try {
        anchor = sample_anchor(
            params, fam.d, options.uniform_budget, options.seed,
            [&](const ByShift<std::int64_t>& d) { return max_abs(d) <= bound && targets_assemblable(params, d); },
            "bounded and assemblable");
        fam.anchor_strategy = AnchorStrategy::uniform;
      } catch (const SearchFailure&) {
        anchor = steer_anchor(params, fam.d, options.steer_budget, options.seed);
        fam.anchor_strategy = AnchorStrategy::steered;
      }
      break;
  }
  fam.a = anchor.a;
  fam.delta = anchor.delta;
  const TernaryKey key = build_ternary_key(params, fam.d, fam.delta);
  fam.K = key.K;
  fam.xi = key.xi;
  fam.L = intersect_classes(fam.a, params.nu, fam.K, params.beta);

  const auto bad = family_violations(fam);
  if (!bad.empty()) throw std::logic_error("constructed family is inconsistent: " + bad.front());
  return fam;
}

}  // namespace collider
