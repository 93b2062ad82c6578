#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace fqc {

/// Seeded generator with platform-independent draws: the raw 64-bit engine
/// output is mapped to doubles by hand instead of through std distributions,
/// whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  /// Index drawn with probability weights[i] / total. Zero-weight entries are
  /// never returned. `total` must be the sum of `weights` and positive.
  std::size_t categorical(std::span<const double> weights, double total) noexcept {
    const double target = uniform01() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      acc += weights[i];
      last_positive = i;
      if (target < acc) return i;
    }
    // Rounding left target >= acc; fall back to the last reachable entry.
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fqc
