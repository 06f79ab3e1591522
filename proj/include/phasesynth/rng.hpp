// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace phasesynth {

/// 64-bit Mersenne twister with hand-rolled uniform draws, so a run trace does
/// not depend on the standard library's distribution implementations.
class rng {
 public:
  explicit rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling on the largest multiple of n.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw = engine_();
    while (draw >= limit) {
      draw = engine_();
    }
    return draw % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent trial seeds from a campaign seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for trial `index` of a campaign seeded with `campaign_seed`.
constexpr std::uint64_t derive_trial_seed(std::uint64_t campaign_seed, std::uint64_t index) {
  return splitmix64(campaign_seed ^ splitmix64(index));
}

}  // namespace phasesynth
