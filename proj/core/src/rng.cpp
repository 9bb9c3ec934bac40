#include "edgecluster/rng.hpp"

namespace edgecluster {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) noexcept {
  std::uint64_t s = seed;
  for (auto& word : state_) word = splitmix64(s);
}

std::uint64_t Xoshiro256ss::next() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::uint64_t Xoshiro256ss::bounded(std::uint64_t bound) noexcept {
  // Modulo rejection: discard draws from the final partial block of 2^64 so
  // every residue is equally likely. bound must be >= 1.
  const std::uint64_t max = ~std::uint64_t{0};
  const std::uint64_t rem = (max % bound + 1) % bound;  // 2^64 mod bound
  const std::uint64_t limit = max - rem;
  std::uint64_t r = next();
  while (r > limit) r = next();
  return r % bound;
}

double Xoshiro256ss::unit() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Xoshiro256ss::uniform(double lo, double hi) noexcept {
  return lo + (hi - lo) * unit();
}

}  // namespace edgecluster
