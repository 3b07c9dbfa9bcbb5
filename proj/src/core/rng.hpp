#pragma once

#include <cstdint>

namespace rsent {

// SplitMix64 — a small, fast generator whose output sequence for a given seed
// is identical on every platform.  The standard <random> engines would also
// be portable, but the standard distributions are not, and reproducible runs
// are a hard requirement, so all randomness flows through this one stream.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Degenerate probabilities consume no randomness, so turning an error
  // source off (p = 0) does not shift every later draw in the run.
  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return next_double() < p;
  }

  // Uniform in [0, n).  n must be positive.
  uint64_t below(uint64_t n) { return next_u64() % n; }

 private:
  uint64_t state_;
};

}  // namespace rsent
