#pragma once

#include <cstdint>
#include <random>

namespace fsot {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; used to derive independent, reproducible streams.
std::uint64_t mix64(std::uint64_t x);

/// Stream for (seed, a, b). Every sliced step draws from its own stream so the
/// result does not depend on which thread computed it.
Rng make_stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0);

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n).
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

/// Standard normal deviate (Box-Muller, no cached state).
double standard_normal(Rng& rng);

}  // namespace fsot
