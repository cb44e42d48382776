#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "saislab/types.hpp"

namespace saislab {

/// Default seed used by the CLI when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 42;

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// xoshiro256** seeded via splitmix64. Self-contained so that sampled
/// sequences are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = detail::splitmix64(x);
  }

  /// Independent per-trial stream: trial index is mixed into the seed.
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
    std::uint64_t x = seed;
    std::uint64_t a = detail::splitmix64(x);
    std::uint64_t t = trial + 0x632be59bd9b4e019ULL;
    return Rng(a ^ detail::splitmix64(t));
  }

  std::uint64_t next() {
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
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

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_[4];
};

/// Samples an index from a cumulative weight table (cum.back() is the total).
/// Returns the first i with u * total < cum[i].
inline std::size_t sample_cumulative(std::span<const double> cum, double u) {
  const double target = u * cum.back();
  std::size_t lo = 0, hi = cum.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (cum[mid] > target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

/// Builds the cumulative table of a weight row.
inline std::vector<double> cumulative(std::span<const double> weights) {
  std::vector<double> cum(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cum[i] = acc;
  }
  return cum;
}

}  // namespace saislab
