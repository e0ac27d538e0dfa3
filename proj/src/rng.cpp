// SPDX-License-Identifier: Apache-2.0

#include "blinddiag/rng.hpp"

namespace blinddiag {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

std::uint64_t label_seed(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label, then mixed with the seed.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(seed ^ splitmix64(h));
}

RandomStream substream(std::uint64_t seed, Substream which) {
  switch (which) {
    case Substream::kChannel: return RandomStream(label_seed(seed, "channel"));
    case Substream::kFaults: return RandomStream(label_seed(seed, "faults"));
    case Substream::kCombining: return RandomStream(label_seed(seed, "combining"));
    case Substream::kNoise: return RandomStream(label_seed(seed, "noise"));
    case Substream::kCsiError: return RandomStream(label_seed(seed, "csi-error"));
  }
  return RandomStream(seed);
}

}  // namespace blinddiag
