#pragma once

#include <cstdint>

namespace matchvar {

/// SplitMix64. Small, fast, and fully portable: identical output on every
/// platform, unlike <random> distributions.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
};

/// Counter-based stream: the generator for sample `index` depends only on
/// (seed, index), so parallel scheduling cannot change any draw.
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL));
  std::uint64_t a = mixer.next();
  std::uint64_t b = mixer.next();
  return SplitMix64(a ^ (b << 1));
}

}  // namespace matchvar
