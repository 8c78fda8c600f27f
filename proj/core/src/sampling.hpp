#pragma once

#include <cstddef>
#include <cstdint>

#include "collider/constructor.hpp"
#include "collider/random.hpp"

namespace collider::detail {

// Sample i of a run is drawn by lane i % kSampleLanes from that lane's own
// generator, which keeps results independent of the thread count.
inline constexpr std::size_t kSampleLanes = 16;
inline constexpr std::uint64_t kLaneStreamBase = 0x1a0e0000;

inline Rng lane_rng(std::uint64_t seed, std::size_t lane) { return make_rng(seed, kLaneStreamBase + lane); }

inline BigNat draw_k(Rng& rng, const ProgressionSpec& spec, const BigNat& width) {
  return spec.k_lo + uniform_below(rng, width);
}

}  // namespace collider::detail
