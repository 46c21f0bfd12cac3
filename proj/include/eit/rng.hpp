// Seeded 64-bit generator (splitmix64).  Same seed, same stream, on every
// platform; this is the determinism contract behind the verification suites.

#pragma once

#include <cstdint>

namespace eit {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 bits of mantissa.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Either -1 or +1.
  int sign() { return (next_u64() & 1ull) ? 1 : -1; }

 private:
  std::uint64_t state_;
};

}  // namespace eit
