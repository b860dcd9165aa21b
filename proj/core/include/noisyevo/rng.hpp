#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace noisyevo {

// splitmix64 finalizer; used for seeding and for deriving substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic mix of (seed, index) -> seed of the index-th substream.
// Two finalizer rounds so that consecutive indices land far apart.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ 0x6A09E667F3BCC909ULL) + index);
}

// Seedable xoshiro256++ stream. Same seed gives the bit-identical draw
// sequence on every platform; the Gaussian path is hand-rolled (Box-Muller)
// for the same reason.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
      s = splitmix64(s);
      word = s;
    }
  }

  std::uint64_t seed() const { return seed_; }

  // Substream with no cross-correlation to this stream by construction.
  RandomStream child(std::uint64_t index) const {
    return RandomStream(mix_seed(seed_, index));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool next_bernoulli(double p) { return next_unit() < p; }

  // Unbiased uniform integer in [0, bound), bound >= 1. Lemire's
  // multiply-shift with rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Standard normal via Box-Muller (cosine branch only, no cached spare:
  // the draw sequence then depends only on the call sequence).
  double next_gaussian() {
    const double u1 =
        static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_;
  std::uint64_t state_[4];
};

// Counts noisy objective-function calls; the cost metric of every run.
class EvalCounter {
 public:
  std::uint64_t count() const { return count_; }
  void increment() { ++count_; }

 private:
  std::uint64_t count_ = 0;
};

}  // namespace noisyevo
