#include "collider/constructor.hpp"

#include <cmath>
#include <sstream>

#include "collider/digits.hpp"

namespace collider {
namespace {

std::int64_t floor_mod2(std::int64_t v) { return ((v % 2) + 2) % 2; }

// Ternary values of the four-digit blocks (most significant digit first):
// 0200 -> 18, 0202 -> 20, 0112 -> 14.
constexpr std::uint64_t kRaiseBlock = 18;
constexpr std::uint64_t kNeutralBlock = 20;
constexpr std::uint64_t kLowerBlock = 14;

Params finish_params(Params p) {
  p.beta = (2 * static_cast<std::uint64_t>(p.J) + 1) * p.eta + 1;
  p.nu = minimal_nu(p.beta);
  return p;
}

}  // namespace

std::uint64_t minimal_nu(std::uint64_t beta) {
  // 3^beta is never a power of two, so 2^(nu-1) >= 3^beta iff nu - 1 >= bit_length.
  return BigNat::pow(3, beta).bit_length() + 1;
}

Params make_params(const ManualParams& spec) {
  if (spec.eta < 4 || spec.eta % 4 != 0) {
    throw InvalidArgument("eta must be a positive multiple of 4 (got " + std::to_string(spec.eta) + ")");
  }
  if (spec.m < 1) throw InvalidArgument("m must be >= 1");
  if (spec.J < 0) throw InvalidArgument("J must be >= 0");
  Params p;
  p.eta = spec.eta;
  p.m = spec.m;
  p.J = spec.J;
  p.mode = ParamsMode::manual;
  return finish_params(p);
}

Params make_params_from_log(double log_n, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be > 0");
  if (!(log_n >= std::log(4.0))) throw InvalidArgument("asymptotic mode requires N >= 4");
  const double lambda0 = log_n;
  const double eta0 = std::pow(lambda0, 0.75);
  const double f0 = std::pow(std::log(lambda0), 0.5 + epsilon);
  const double m0 = std::sqrt(lambda0) / f0;
  const double J0 = f0 * f0;

  Params p;
  p.mode = ParamsMode::asymptotic;
  p.epsilon = epsilon;
  p.lambda = static_cast<std::uint64_t>(std::floor(lambda0));
  p.eta = 4 * static_cast<std::uint64_t>(std::floor(eta0 / 4.0));
  p.fineness = f0 > 0.0 ? static_cast<std::uint64_t>(std::floor(f0)) : 0;
  p.m = m0 > 0.0 ? static_cast<std::uint64_t>(std::floor(m0)) : 0;
  p.J = static_cast<std::int64_t>(std::floor(J0));
  if (p.eta < 4 || p.m < 1) {
    throw InvalidArgument("N too small for the asymptotic parameter scheme (eta = " + std::to_string(p.eta) +
                          ", m = " + std::to_string(p.m) + ")");
  }
  return finish_params(p);
}

Params make_params(const BigNat& N, double epsilon) {
  if (N < BigNat(4)) throw InvalidArgument("asymptotic mode requires N >= 4");
  return make_params_from_log(N.log(), epsilon);
}

ByShift<BigNat> build_shifts(const Params& params) {
  ByShift<BigNat> d(params.J);
  for (std::int64_t j = -params.J; j <= params.J; ++j) {
    const auto ones = static_cast<std::uint64_t>(j + 1 + params.J) * params.eta;
    d[j] = BigNat(3) * ((BigNat::pow(3, ones) - BigNat(1)) / BigNat(2));
  }
  return d;
}

ByShift<std::int64_t> binary_deviations(const BigNat& a, const ByShift<BigNat>& shifts, std::uint64_t nu) {
  ByShift<std::int64_t> delta(shifts.J());
  const auto base = static_cast<std::int64_t>(digit_sum_trunc(a, 2, nu));
  for (std::int64_t j = shifts.first(); j <= shifts.last(); ++j) {
    delta[j] = static_cast<std::int64_t>(digit_sum_trunc(a + shifts[j], 2, nu)) - base;
  }
  return delta;
}

TernaryTargets ternary_targets(const Params& params, const ByShift<std::int64_t>& delta) {
  const std::int64_t J = params.J;
  const auto m = static_cast<std::int64_t>(params.m);
  TernaryTargets out{ByShift<std::int64_t>(J), ByShift<int>(J)};
  out.target[-J] = J * m + delta[-J];
  out.xi[-J] = static_cast<int>(floor_mod2(out.target[-J]));
  for (std::int64_t j = -J + 1; j <= J; ++j) {
    out.target[j] = -m - delta[j - 1] + out.xi[j - 1] + delta[j];
    out.xi[j] = static_cast<int>(floor_mod2(out.target[j]));
  }
  return out;
}

bool targets_assemblable(const Params& params, const ByShift<std::int64_t>& delta) {
  const TernaryTargets t = ternary_targets(params, delta);
  const auto half = static_cast<std::int64_t>(params.eta / 2);
  for (auto v : t.target.values()) {
    if (v > half || v < -half) return false;
  }
  return true;
}

BlockAssembly assemble_blocks(std::int64_t target, std::uint64_t eta) {
  if (eta < 4 || eta % 4 != 0) throw InvalidArgument("eta must be a positive multiple of 4");
  const auto half = static_cast<std::int64_t>(eta / 2);
  if (target > half || target < -half) {
    throw ParamsTooSmall("ternary target " + std::to_string(target) + " exceeds eta/2 = " + std::to_string(half) +
                         "; increase eta");
  }
  BlockAssembly out;
  out.xi = static_cast<int>(floor_mod2(target));
  const std::int64_t variation = target - out.xi;
  const auto signed_blocks = static_cast<std::uint64_t>(variation < 0 ? -variation : variation) / 2;
  const std::uint64_t signed_value = variation > 0 ? kRaiseBlock : kLowerBlock;

  const std::uint64_t blocks = eta / 4;
  mpz_class acc = 0;
  for (std::uint64_t i = 0; i < blocks; ++i) {  // most significant block first
    acc *= 81;
    acc += i < signed_blocks ? signed_value : kNeutralBlock;
  }
  out.a_frak = BigNat(acc);
  return out;
}

TernaryKey build_ternary_key(const Params& params, const ByShift<BigNat>& shifts,
                             const ByShift<std::int64_t>& delta) {
  const std::int64_t J = params.J;
  const auto m = static_cast<std::int64_t>(params.m);
  const TernaryTargets targets = ternary_targets(params, delta);

  TernaryKey key{BigNat{}, ByShift<int>(J)};
  for (std::int64_t j = -J; j <= J; ++j) {
    const BlockAssembly block = assemble_blocks(targets.target[j], params.eta);
    key.xi[j] = block.xi;
    const auto window = static_cast<std::uint64_t>(j + J) * params.eta + 1;
    key.K += BigNat::pow(3, window) * block.a_frak;
  }

  const auto s3K = static_cast<std::int64_t>(digit_sum(key.K, 3));
  for (std::int64_t j = -J; j <= J; ++j) {
    const std::int64_t got = static_cast<std::int64_t>(digit_sum(key.K + shifts[j], 3)) - s3K;
    const std::int64_t want = -j * m + delta[j] - key.xi[j];
    if (got != want) {
      throw std::logic_error("ternary key check failed at j = " + std::to_string(j) + ": got " +
                             std::to_string(got) + ", want " + std::to_string(want));
    }
  }
  return key;
}

BigNat intersect_classes(const BigNat& a, std::uint64_t nu, const BigNat& K, std::uint64_t beta) {
  const BigNat m2 = BigNat::pow2(nu);
  const BigNat m3 = BigNat::pow(3, beta);
  const BigNat a_red = a % m2;
  const BigNat k_red = K % m3;
  // L = a + 2^nu * ((K - a) * (2^nu)^-1 mod 3^beta)
  const BigNat diff = (k_red + m3 - (a_red % m3)) % m3;
  const BigNat lift = (diff * mod_inverse(m2 % m3, m3)) % m3;
  BigNat L = a_red + m2 * lift;
  if (L % m2 != a_red || L % m3 != k_red || L >= m2 * m3) {
    throw std::logic_error("CRT recombination failed");
  }
  return L;
}

const char* to_string(AnchorStrategy s) {
  switch (s) {
    case AnchorStrategy::automatic: return "automatic";
    case AnchorStrategy::uniform: return "uniform";
    case AnchorStrategy::steered: return "steered";
  }
  return "?";
}

BigNat ShiftFamily::modulus() const { return BigNat::pow2(params.nu) * BigNat::pow(3, params.beta); }

std::vector<std::string> family_violations(const ShiftFamily& fam) {
  std::vector<std::string> bad;
  auto fail = [&](const std::string& s) { bad.push_back(s); };
  const Params& p = fam.params;
  const std::int64_t J = p.J;
  const auto m = static_cast<std::int64_t>(p.m);

  if (p.eta % 4 != 0 || p.eta == 0) fail("eta is not a positive multiple of 4");
  if (p.beta != (2 * static_cast<std::uint64_t>(J) + 1) * p.eta + 1) fail("beta != (2J+1) eta + 1");
  if (p.nu != minimal_nu(p.beta)) fail("nu is not minimal with 2^(nu-1) >= 3^beta");

  const BigNat half_range = BigNat::pow2(p.nu - 1);
  const ByShift<BigNat> expect_d = build_shifts(p);
  for (std::int64_t j = -J; j <= J; ++j) {
    const std::string at = " at j = " + std::to_string(j);
    if (fam.d[j] != expect_d[j]) fail("d_j differs from 3(3^((j+1+J)eta)-1)/2" + at);
    if (fam.d[j].mod_u64(12) != 0) fail("d_j is not divisible by 12" + at);
  }
  if (fam.d[J] >= half_range) fail("d_J >= 2^(nu-1)");
  if (fam.a.mod_u64(4) != 1) fail("a is not 1 mod 4");
  if (fam.a >= half_range) fail("a >= 2^(nu-1)");
  if (fam.delta != binary_deviations(fam.a, fam.d, p.nu)) fail("delta_j does not match recomputation");

  const BigNat m3 = BigNat::pow(3, p.beta);
  const BigNat m2 = BigNat::pow2(p.nu);
  if (fam.K >= m3) fail("K >= 3^beta");
  if (fam.K.mod_u64(3) != 0) fail("K is not divisible by 3");
  const auto s3K = static_cast<std::int64_t>(digit_sum(fam.K, 3));
  for (std::int64_t j = -J; j <= J; ++j) {
    if (fam.xi[j] != 0 && fam.xi[j] != 1) fail("xi_j not in {0,1}");
    const std::int64_t got = static_cast<std::int64_t>(digit_sum(fam.K + fam.d[j], 3)) - s3K;
    if (got != -j * m + fam.delta[j] - fam.xi[j]) fail("ternary difference wrong at j = " + std::to_string(j));
  }
  if (fam.L >= m2 * m3) fail("L >= 2^nu 3^beta");
  if (fam.L % m2 != fam.a) fail("L != a mod 2^nu");
  if (fam.L % m3 != fam.K) fail("L != K mod 3^beta");
  if (fam.L.mod_u64(12) != 9) fail("L != 9 mod 12");
  if (bad.empty()) {
    const DifferenceReport r = verify_difference_at(fam, BigNat{});
    if (!r.passed) fail("difference property fails at n = L");
  }
  return bad;
}

ZetaChoice zeta_from_terms(double log3_n, double s3_L, double s2_r2, double nu, double beta) {
  const double c = 1.0 - std::log(3.0) / std::log(4.0);
  ZetaChoice z;
  z.zeta0 = log3_n * c + s3_L - s2_r2 + nu / 2.0 - beta;
  const double fl = std::floor(z.zeta0);
  if (fl < 0.0) {
    z.clamped = true;
    z.zeta = 0;
  } else {
    z.zeta = static_cast<std::uint64_t>(fl);
  }
  return z;
}

ZetaChoice choose_zeta(const BigNat& N, const BigNat& L, std::uint64_t nu, std::uint64_t beta, const BigNat& r2) {
  if (N < BigNat(4)) throw InvalidArgument("choose_zeta requires N >= 4");
  return zeta_from_terms(N.log() / std::log(3.0), static_cast<double>(digit_sum(L, 3)),
                         static_cast<double>(digit_sum(r2, 2)), static_cast<double>(nu),
                         static_cast<double>(beta));
}

BigNat ProgressionSpec::element(const BigNat& k) const { return family.L + modulus * k; }

ProgressionSpec make_progression(const ShiftFamily& family, const BigNat& N,
                                 std::optional<std::uint64_t> zeta_override) {
  const Params& p = family.params;
  ProgressionSpec spec;
  spec.family = family;
  spec.N = N;
  spec.r2 = family.L.low_bits(p.nu);
  spec.b2 = family.L >> p.nu;
  const ZetaChoice z = choose_zeta(N, family.L, p.nu, p.beta, spec.r2);
  spec.zeta0 = z.zeta0;
  spec.zeta = zeta_override.value_or(z.zeta);
  spec.zeta_clamped = !zeta_override && z.clamped;
  spec.modulus = BigNat::pow2(p.nu) * BigNat::pow(3, p.beta + spec.zeta);
  if (spec.modulus > N) {
    throw EmptyInterval("progression modulus 2^nu 3^(beta+zeta) (" + std::to_string(spec.modulus.bit_length()) +
                        " bits) exceeds N (" + std::to_string(N.bit_length()) + " bits)");
  }
  const BigNat two_n = N + N;
  spec.k_lo = N > family.L ? ceil_div(N - family.L, spec.modulus) : BigNat{};
  spec.k_hi = ceil_div(two_n - family.L, spec.modulus);
  if (spec.k_lo >= spec.k_hi) throw EmptyInterval("sampling interval I is empty");
  return spec;
}

DifferenceReport verify_difference_at(const ShiftFamily& family, const BigNat& k) {
  DifferenceReport r;
  const BigNat n = family.L + family.modulus() * k;
  const std::int64_t base = f_value(n);
  const auto m = static_cast<std::int64_t>(family.params.m);
  for (std::int64_t j = -family.params.J; j <= family.params.J; ++j) {
    ++r.checked;
    const std::int64_t got = f_value(n + family.d[j]) - base;
    const std::int64_t want = j * m + family.xi[j];
    if (got != want) {
      r.passed = false;
      r.counterexample = DifferenceCounterexample{k, j, want, got};
      return r;
    }
  }
  return r;
}

DifferenceReport verify_difference_property(const ShiftFamily& family, std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  Rng rng = make_rng(seed, 0xd1ff);
  DifferenceReport total;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const DifferenceReport r = verify_difference_at(family, BigNat(rng()));
    total.checked += r.checked;
    if (!r.passed) {
      total.passed = false;
      total.counterexample = r.counterexample;
      return total;
    }
  }
  return total;
}

}  // namespace collider
