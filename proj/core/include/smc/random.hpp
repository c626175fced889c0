#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace smc {

/// Random engine used for every stochastic step. Each logical consumer
/// (retina, ensemble, per-input motors, per-input CCA) owns its own stream.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for the stream identified by (master seed, purpose tag, index).
/// Stable across runs and independent of scheduling order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view purpose,
                          std::uint64_t index = 0) noexcept;

inline Rng make_stream(std::uint64_t master_seed, std::string_view purpose,
                       std::uint64_t index = 0) {
  return Rng(derive_seed(master_seed, purpose, index));
}

/// Uniform draw in [lo, hi).
inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace smc
