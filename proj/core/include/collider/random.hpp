#pragma once

#include <cstdint>
#include <random>

#include "collider/bignat.hpp"

namespace collider {

// Seed used whenever the caller does not supply one. Fixed (never time
// based) so that every run is reproducible.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed2023c011de5ULL;

// splitmix64 finalizer; derives independent stream seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream);

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(mix_seed(seed, stream));
}

// Uniform draw from [0, bound). Draws bit_length(bound) + 64 raw bits and
// reduces, so the bias is below 2^-64 without a rejection loop.
BigNat uniform_below(Rng& rng, const BigNat& bound);

// Uniform draw of exactly `bits` random bits, i.e. from [0, 2^bits).
BigNat random_bits(Rng& rng, std::size_t bits);

}  // namespace collider
