#pragma once

#include <cstdint>
#include <random>

#include "cnr/types.hpp"

namespace cnr {

// Deterministic random source. Every sample index gets its own substream
// derived from (seed, index), so clouds do not depend on evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}
  Rng(std::uint64_t seed, std::uint64_t stream)
      : engine_(mix(mix(seed) ^ (stream + 0x9E3779B97F4A7C15ULL))) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }

  // Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex complex_normal() {
    constexpr double kHalfVar = 0.70710678118654752440;
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {re * kHalfVar, im * kHalfVar};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace cnr
