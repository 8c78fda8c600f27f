#include "collider/random.hpp"

#include <vector>

#include "collider/errors.hpp"

namespace collider {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BigNat random_bits(Rng& rng, std::size_t bits) {
  if (bits == 0) return BigNat{};
  std::vector<std::uint64_t> words((bits + 63) / 64);
  for (auto& w : words) w = rng();
  const std::size_t spare = words.size() * 64 - bits;
  if (spare != 0) words.back() >>= spare;
  mpz_class v;
  mpz_import(v.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
  return BigNat(v);
}

BigNat uniform_below(Rng& rng, const BigNat& bound) {
  if (bound.is_zero()) throw InvalidArgument("uniform_below: empty range");
  return random_bits(rng, bound.bit_length() + 64) % bound;
}

}  // namespace collider
