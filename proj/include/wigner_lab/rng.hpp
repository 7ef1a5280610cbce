#pragma once

#include <cstdint>

namespace wigner_lab {

/// Counter-based uniform stream built on the SplitMix64 finalizer. Draw k of a
/// stream depends only on (seed, k), so any partition of draws across workers
/// reproduces the sequential sequence.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(mix(seed ^ 0x5851f42d4c957f2dULL)) {}

  std::uint64_t bits(std::uint64_t index) const { return mix(seed_ + (index + 1) * 0x9e3779b97f4a7c15ULL); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace wigner_lab
