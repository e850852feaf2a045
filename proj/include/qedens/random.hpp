#pragma once

#include <cstdint>
#include <string_view>

namespace qedens {

/// Counter-based SplitMix64 stream: draw k returns mix(seed + (k+1) * golden),
/// where mix is the SplitMix64 finalizer. Outputs depend only on (seed, k),
/// so a run is reproducible from the seed alone on every platform.
class CounterRng {
 public:
  static constexpr std::string_view kName = "splitmix64-counter";
  static constexpr std::uint64_t kDefaultSeed = 42;

  explicit CounterRng(std::uint64_t seed = kDefaultSeed) : seed_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace qedens
