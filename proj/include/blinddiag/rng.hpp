// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "blinddiag/types.hpp"

namespace blinddiag {

// One deterministic random stream. All sampling in the library goes through
// an explicit stream so results depend only on the seed it was built from.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform(double low, double high) {
    return std::uniform_real_distribution<double>(low, high)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  // Circularly symmetric complex Gaussian with E|z|^2 = variance.
  Complex complex_normal(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Labelled sub-streams of a trial seed. Each model component draws from its
// own stream so one can be regenerated without replaying the others.
enum class Substream : std::uint64_t {
  kChannel = 1,
  kFaults = 2,
  kCombining = 3,
  kNoise = 4,
  kCsiError = 5,
};

std::uint64_t splitmix64(std::uint64_t x);

// Counter-based seed for trial `index` of a run seeded with `master`.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

std::uint64_t label_seed(std::uint64_t seed, std::string_view label);

RandomStream substream(std::uint64_t seed, Substream which);

}  // namespace blinddiag
