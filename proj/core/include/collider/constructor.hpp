#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collider/bignat.hpp"
#include "collider/errors.hpp"
#include "collider/random.hpp"

namespace collider {

/// Values indexed by the shift index j in [-J, J].
template <class T>
class ByShift {
 public:
  ByShift() = default;
  explicit ByShift(std::int64_t J, const T& init = T{})
      : J_(J), values_(static_cast<std::size_t>(2 * J + 1), init) {}

  std::int64_t J() const { return J_; }
  std::int64_t first() const { return -J_; }
  std::int64_t last() const { return J_; }

  T& operator[](std::int64_t j) { return values_.at(index(j)); }
  const T& operator[](std::int64_t j) const { return values_.at(index(j)); }

  const std::vector<T>& values() const { return values_; }

  friend bool operator==(const ByShift&, const ByShift&) = default;

 private:
  std::size_t index(std::int64_t j) const {
    if (j < -J_ || j > J_) throw InvalidArgument("shift index out of range");
    return static_cast<std::size_t>(j + J_);
  }

  std::int64_t J_ = 0;
  std::vector<T> values_;
};

enum class ParamsMode { asymptotic, manual };

/// Parameter bundle of the residue-class construction.
///
/// beta = (2J+1) eta + 1 and nu is the least integer with 2^(nu-1) >= 3^beta.
/// In asymptotic mode lambda, fineness and epsilon record the scheme that
/// produced eta, m and J; in manual mode they are zero.
struct Params {
  std::uint64_t lambda = 0;
  std::uint64_t eta = 0;
  std::uint64_t fineness = 0;
  std::uint64_t m = 0;
  std::int64_t J = 0;
  std::uint64_t beta = 0;
  std::uint64_t nu = 0;
  double epsilon = 0.0;
  ParamsMode mode = ParamsMode::manual;

  friend bool operator==(const Params&, const Params&) = default;
};

struct ManualParams {
  std::uint64_t eta = 0;
  std::uint64_t m = 0;
  std::int64_t J = 0;
};

inline constexpr double kDefaultEpsilon = 0.1;

/// Manual mode: eta >= 4, eta = 0 mod 4, m >= 1, J >= 0 (J = 0 is a
/// single-shift smoke configuration).
Params make_params(const ManualParams& spec);
/// Asymptotic mode from N >= 4 (natural log).
Params make_params(const BigNat& N, double epsilon = kDefaultEpsilon);
/// Asymptotic mode from log N given as a real, for N that are not integers or
/// too large to materialise.
Params make_params_from_log(double log_n, double epsilon = kDefaultEpsilon);

/// Least nu >= 1 with 2^(nu-1) >= 3^beta.
std::uint64_t minimal_nu(std::uint64_t beta);

/// d_j = 3 (3^((j+1+J) eta) - 1) / 2, the ternary numeral 1^((j+1+J) eta) 0.
ByShift<BigNat> build_shifts(const Params& params);

/// delta_j = s_2^(nu)(a + d_j) - s_2^(nu)(a).
ByShift<std::int64_t> binary_deviations(const BigNat& a, const ByShift<BigNat>& shifts,
                                        std::uint64_t nu);

struct Anchor {
  BigNat a;
  ByShift<std::int64_t> delta;
  std::uint64_t draws = 0;  // candidates examined
};

/// max(4, 2 ceil(sqrt(2 nu))).
std::int64_t default_deviation_bound(std::uint64_t nu);

/// Uniform sampling of a = 1 mod 4, a < 2^(nu-1), until |delta_j| <= bound
/// for all j. Throws SearchFailure after `budget` draws (budget 0 fails
/// immediately).
Anchor find_anchor(const Params& params, const ByShift<BigNat>& shifts, std::int64_t bound,
                   std::uint64_t budget, std::uint64_t seed);

/// Ternary block targets implied by the binary deviations: the value the
/// j-th eta-window of K must add to s_3 (before the parity correction xi).
struct TernaryTargets {
  ByShift<std::int64_t> target;
  ByShift<int> xi;
};
TernaryTargets ternary_targets(const Params& params, const ByShift<std::int64_t>& delta);

/// True when every target is reachable by assemble_blocks, |target| <= eta/2.
bool targets_assemblable(const Params& params, const ByShift<std::int64_t>& delta);

/// Local search over the free bits of a (a = 1 mod 4, a < 2^(nu-1)) that
/// steers delta_j towards j*m until every ternary target is assemblable.
/// Needed whenever J*m exceeds eta/2, where small deviations cannot work.
Anchor steer_anchor(const Params& params, const ByShift<BigNat>& shifts, std::uint64_t budget,
                    std::uint64_t seed);

struct BlockAssembly {
  BigNat a_frak;
  int xi = 0;
};

/// Concatenates eta/4 four-digit ternary blocks 0200 (+2), 0202 (0) and
/// 0112 (-2) so that s_3(a_frak + (3^eta - 1)/2) - s_3(a_frak) = target - xi
/// with xi = target mod 2. Signed blocks occupy the most significant end.
BlockAssembly assemble_blocks(std::int64_t target, std::uint64_t eta);

struct TernaryKey {
  BigNat K;
  ByShift<int> xi;
};

/// K = k_J with s_3(K + d_j) - s_3(K) = -j m + delta_j - xi_j for all j.
/// Throws ParamsTooSmall when some target is out of the assembler range.
TernaryKey build_ternary_key(const Params& params, const ByShift<BigNat>& shifts,
                             const ByShift<std::int64_t>& delta);

/// Unique L < 2^nu 3^beta with L = a mod 2^nu and L = K mod 3^beta.
BigNat intersect_classes(const BigNat& a, std::uint64_t nu, const BigNat& K, std::uint64_t beta);

enum class AnchorStrategy { automatic, uniform, steered };

const char* to_string(AnchorStrategy s);

/// Output of the construction: on the class
/// L + 2^nu 3^beta N the difference f(n + d_j) - f(n) equals j m + xi_j.
struct ShiftFamily {
  Params params;
  ByShift<BigNat> d;
  BigNat a;
  ByShift<std::int64_t> delta;
  ByShift<int> xi;
  BigNat K;
  BigNat L;
  AnchorStrategy anchor_strategy = AnchorStrategy::uniform;

  /// 2^nu 3^beta.
  BigNat modulus() const;
};

struct FamilyOptions {
  std::uint64_t seed = kDefaultSeed;
  AnchorStrategy strategy = AnchorStrategy::automatic;
  /// Deviation bound for uniform sampling; default_deviation_bound(nu) if unset.
  std::optional<std::int64_t> bound;
  std::uint64_t uniform_budget = 4096;
  std::uint64_t steer_budget = 4'000'000;
};

/// Full pipeline: shifts, anchor, ternary key, CRT class. In automatic mode
/// a uniform anchor is tried first (accepting only anchors whose targets are
/// assemblable) and steering takes over when the budget runs out.
ShiftFamily construct_family(const Params& params, const FamilyOptions& options = {});

/// Recomputes every ShiftFamily invariant; returns a description of each
/// violation (empty when the family is sound).
std::vector<std::string> family_violations(const ShiftFamily& family);

struct ZetaChoice {
  double zeta0 = 0.0;
  std::uint64_t zeta = 0;
  bool clamped = false;  // zeta0 < 0, zeta forced to 0
};

/// zeta0 = log_3(N) (1 - log 3 / log 4) + s_3(L) - s_2(r_2) + nu/2 - beta.
ZetaChoice zeta_from_terms(double log3_n, double s3_L, double s2_r2, double nu, double beta);
ZetaChoice choose_zeta(const BigNat& N, const BigNat& L, std::uint64_t nu, std::uint64_t beta,
                       const BigNat& r2);

/// The rarefied progression A'' = (L + 2^nu 3^(beta+zeta) N) cap [N, 2N),
/// indexed by k in [k_lo, k_hi).
struct ProgressionSpec {
  ShiftFamily family;
  BigNat N;
  std::uint64_t zeta = 0;
  double zeta0 = 0.0;
  bool zeta_clamped = false;
  BigNat modulus;  // 2^nu 3^(beta+zeta)
  BigNat k_lo;
  BigNat k_hi;
  BigNat r2;  // L mod 2^nu
  BigNat b2;  // floor(L / 2^nu)

  BigNat interval_size() const { return k_hi - k_lo; }
  /// L + modulus * k.
  BigNat element(const BigNat& k) const;
};

/// zeta0 always follows the formula; zeta is its floor unless overridden.
/// Throws EmptyInterval when modulus > N or I is empty.
ProgressionSpec make_progression(const ShiftFamily& family, const BigNat& N,
                                 std::optional<std::uint64_t> zeta_override = std::nullopt);

struct DifferenceCounterexample {
  BigNat k;
  std::int64_t j = 0;
  std::int64_t expected = 0;
  std::int64_t actual = 0;
};

struct DifferenceReport {
  bool passed = true;
  std::uint64_t checked = 0;  // (n, j) pairs evaluated
  std::optional<DifferenceCounterexample> counterexample;
};

/// Checks f(n + d_j) - f(n) = j m + xi_j at n = L + 2^nu 3^beta k.
DifferenceReport verify_difference_at(const ShiftFamily& family, const BigNat& k);
/// Same for `samples` random k < 2^64; stops at the first failure.
DifferenceReport verify_difference_property(const ShiftFamily& family, std::uint64_t samples,
                                            std::uint64_t seed);

}  // namespace collider
