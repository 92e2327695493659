#pragma once

#include <cstdint>

namespace macid {

// SplitMix64 finalizer. Pure integer mixing, identical on every platform.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: the value at (seed, stream, index) never depends on
// evaluation order, so parallel consumers stay reproducible.
inline uint64_t counter_rand(uint64_t seed, uint64_t stream, uint64_t index) {
  return mix64(mix64(mix64(seed) + stream) + index);
}

// Uniform double in [0, 1) from 53 high bits.
inline double u01(uint64_t r) { return static_cast<double>(r >> 11) * 0x1.0p-53; }

inline double counter_u01(uint64_t seed, uint64_t stream, uint64_t index) {
  return u01(counter_rand(seed, stream, index));
}

// Deterministic child seed for nested experiments (per trial, per instance...).
inline uint64_t derive_seed(uint64_t seed, uint64_t tag) { return mix64(seed ^ mix64(tag)); }

}  // namespace macid
