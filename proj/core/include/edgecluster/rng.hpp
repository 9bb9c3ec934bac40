#pragma once

#include <cstdint>

namespace edgecluster {

// Portable deterministic generator: xoshiro256** seeded through splitmix64,
// with rejection sampling for unbiased bounded draws. The exact update
// functions are written out in docs/rng.md so that independent
// implementations reproduce every randomized result bit for bit.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed) noexcept;

  // Next 64 raw bits.
  std::uint64_t next() noexcept;

  // Uniform integer in [0, bound), bound >= 1. Unbiased via rejection.
  std::uint64_t bounded(std::uint64_t bound) noexcept;

  // Uniform double in [0, 1) with 53 random bits.
  double unit() noexcept;

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept;

 private:
  std::uint64_t state_[4];
};

}  // namespace edgecluster
