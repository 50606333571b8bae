#pragma once

#include <cstdint>
#include <random>

namespace snc {

using Rng = std::mt19937_64;

/// Purposes of the independent random streams derived from one master seed.
enum class Stream : std::uint64_t {
  parent = 1,       // parent PPP (or lattice placement)
  timestamps = 2,   // Matern-II marks
  orientation = 3,  // receiver directions
  trial = 4,        // per-trial master seed
  centers = 5,      // regulation-check centers
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed splitting rule: seed' = mix(mix(mix(seed) ^ a) ^ b) ^ stream. Every
/// (a, b, stream) triple yields an independent stream, so trials and classes
/// can be generated in any order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                    Stream stream) {
  return mix64(mix64(mix64(master) ^ a) ^ b) ^ static_cast<std::uint64_t>(stream);
}

/// Uniform double in [0, 1) from the top 53 bits; independent of the
/// standard library's distribution implementation.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace snc
