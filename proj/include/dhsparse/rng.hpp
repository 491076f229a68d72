#pragma once

// Counter-based deterministic randomness.
//
// Every random decision in the library is a pure function of
// (seed, stream label / epoch, counter).  There is no mutable generator
// state shared between consumers, so sequential and parallel execution
// of the same logical work draw identical values.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace dhsparse {

// splitmix64 finalizer; bijective on 64-bit values.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (mix64(b) + 0x9e3779b97f4a7c15ULL));
}

// Labeled sub-seed derivation: hashes the label (FNV-1a) into the root
// seed, then mixes in a counter.  Used to give each consumer (level
// sampling, engine rebuilds, instance generation, ...) an independent
// stream from a single root seed.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                                 std::uint64_t counter = 0) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return hash_combine(hash_combine(root, h), counter);
}

// Fair coin for edge `id` in sampling epoch `epoch`.  Pure function, so
// the sampling pass may evaluate edges in any order or concurrently.
inline bool sample_coin(std::uint64_t seed, std::uint64_t epoch, std::uint64_t id) {
  return (hash_combine(hash_combine(seed, epoch), id) & 1ULL) != 0;
}

// Uniform double in (0, 1]; 53 bits of precision.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t bits = hash_combine(seed, counter);
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes two counter slots per value.
inline double standard_normal(std::uint64_t seed, std::uint64_t counter) {
  double u1 = uniform01(seed, 2 * counter);
  double u2 = uniform01(seed, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643 * u2);
}

}  // namespace dhsparse
