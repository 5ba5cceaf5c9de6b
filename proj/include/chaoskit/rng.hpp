#pragma once

#include <cstdint>

namespace chaoskit {

// Counter-based SplitMix64. The k-th draw from a given seed is a pure
// function of (seed, k), so any consumer can be evaluated out of order or
// in parallel and still produce the same stream. Algorithm: Steele, Lea &
// Flood's SplitMix64 finalizer applied to seed + (k+1) * golden gamma.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01_at(std::uint64_t seed, std::uint64_t k) {
  return static_cast<double>(splitmix64_at(seed, k) >> 11) * 0x1.0p-53;
}

// Sequential convenience wrapper around the counter form.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed), next_(0) {}

  std::uint64_t next_u64() { return splitmix64_at(seed_, next_++); }
  double next_uniform01() { return uniform01_at(seed_, next_++); }

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi) {
    return lo + next_uniform01() * (hi - lo);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t next_;
};

}  // namespace chaoskit
