#pragma once

#include <cstdint>
#include <random>

namespace secmom {

/// The generator behind every Monte Carlo engine.
using Rng = std::mt19937_64;

/// Seed for stream `index` of a run seeded with `seed` (SplitMix64 finalizer
/// over seed + index, so neighbouring streams are decorrelated).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits; defined bit-for-bit,
/// unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Mean and standard error accumulated from streams.
struct Estimate {
  double mean = 0;
  double stderr_ = 0;
  std::uint64_t samples = 0;
};

}  // namespace secmom
