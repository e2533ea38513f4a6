#pragma once

// Seedable, splittable random stream (splitmix64).  Every simulation records
// its seed; identical seed and inputs give identical draws on any platform,
// because uniforms are built from the top 53 bits rather than from
// std::uniform_real_distribution.

#include <cmath>
#include <cstdint>

#include "stellar/types.hpp"

namespace stellar {

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  Real next_unit() {
    return std::ldexp(static_cast<Real>(next_u64() >> 11), -53);
  }

  /// Uniform in [-1, 1).
  Real next_symmetric() { return 2 * next_unit() - 1; }

  /// Uniform integer in [0, n).
  int next_index(int n) {
    int k = static_cast<int>(next_unit() * n);
    return k >= n ? n - 1 : k;
  }

  /// Independent stream derived from this stream's seed and an index; used
  /// to give every Monte Carlo trial its own reproducible stream.
  RngStream substream(std::uint64_t index) const {
    std::uint64_t z = state_ ^ (0xD1342543DE82EF95ull * (index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return RngStream(z ^ (z >> 31));
  }

 private:
  std::uint64_t state_;
};

}  // namespace stellar
