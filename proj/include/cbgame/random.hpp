#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace cbgame {

/// Deterministic pseudorandom stream.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the C++ standard.
/// The conversions to doubles and bounded integers are done here rather than
/// through <random> distributions, whose algorithms are implementation
/// defined, so every platform replays the same stream for the same seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform double in [0, 1) built from the top 53 bits of one draw.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), rejection sampled. bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer applied to base + (index + 1) * golden gamma.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

}  // namespace cbgame
