#include <benchmark/benchmark.h>

#include "collider/collider.hpp"

using namespace collider;

static void BM_PhiRecurrence(benchmark::State& state) {
  const auto L = static_cast<std::uint64_t>(state.range(0));
  Rng rng = make_rng(kDefaultSeed, 2);
  const BigNat t = random_bits(rng, L);
  for (auto _ : state) benchmark::DoNotOptimize(phi_table(t, L));
}
BENCHMARK(BM_PhiRecurrence)->Arg(16)->Arg(64)->Arg(256);

static void BM_PhiBruteforce(benchmark::State& state) {
  const auto L = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phi_table(BigNat(0x2d), L, PhiMode::bruteforce));
}
BENCHMARK(BM_PhiBruteforce)->Arg(12)->Arg(16);

static void BM_OmegaRecurrence(benchmark::State& state) {
  const auto L = static_cast<std::uint64_t>(state.range(0));
  Rng rng = make_rng(kDefaultSeed, 3);
  const BigNat t = random_bits(rng, L);
  for (auto _ : state) benchmark::DoNotOptimize(omega(t, 0.3141, L));
}
BENCHMARK(BM_OmegaRecurrence)->Arg(64)->Arg(1024);

static void BM_Moments(benchmark::State& state) {
  const auto L = static_cast<std::uint64_t>(state.range(0));
  Rng rng = make_rng(kDefaultSeed, 4);
  const BigNat t = random_bits(rng, L);
  for (auto _ : state) benchmark::DoNotOptimize(moments(t, L));
}
BENCHMARK(BM_Moments)->Arg(64)->Arg(512);
