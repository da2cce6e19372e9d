#include "fsot/random.hpp"

#include <cmath>
#include <numbers>

namespace fsot {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
  return Rng(s);
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // Lemire's multiply-shift; the bias is below 2^-64 * n and irrelevant here.
  __extension__ using u128 = unsigned __int128;
  const auto wide = static_cast<u128>(rng()) * n;
  return static_cast<std::uint64_t>(wide >> 64);
}

double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace fsot
