#pragma once

#include <cstdint>
#include <random>

namespace rlm {

using Rng = std::mt19937_64;

/// Engine for replica `stream` of a run seeded with `seed`. Streams are
/// independent for distinct indices and fully determined by (seed, stream).
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x9e3779b9u};
  return Rng(seq);
}

/// Child seed for stream `stream`, for APIs that take a seed rather than an engine.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  Rng rng = make_rng(seed, stream);
  return rng();
}

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng) {
  // 53 random mantissa bits; never rounds up to 1.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace rlm
