#pragma once

#include <cstdint>
#include <span>

namespace csqbc {

/// Deterministic random source based on the splitmix64 sequence.
///
/// Substream derivation is positional: substream(seed, i) starts the
/// generator at internal state seed + (i+1)*GOLDEN, so trial i always sees
/// the same draws no matter how trials are sharded across workers.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed) {}

  static SplitRng substream(std::uint64_t seed, std::uint64_t index) {
    return SplitRng(seed + (index + 1) * kGolden);
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0,1) with 53 bits of precision.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Bernoulli draw. Probabilities within 1e-12 of 0 or 1 are treated as
  /// certain so that deterministic branches stay exact.
  bool bernoulli(double p) {
    if (p >= 1.0 - 1e-12) return true;
    if (p <= 1e-12) return false;
    return uniform() < p;
  }

  /// Index draw from nonnegative weights that sum to ~1. Rounding slack is
  /// absorbed by the last positive bucket; zero-weight buckets are never hit.
  std::size_t categorical(std::span<const double> weights) {
    const double u = uniform();
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0.0) last_positive = i;
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      acc += weights[i];
      if (u < acc) return i;
    }
    return last_positive;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

}  // namespace csqbc
