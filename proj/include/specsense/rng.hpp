#pragma once

#include <cstdint>
#include <random>

namespace specsense {

using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates nearby integer inputs.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stable per-trial stream derivation: the same (master, a, b) triple always
// yields the same seed, independent of which worker runs the trial.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return h;
}

}  // namespace specsense
