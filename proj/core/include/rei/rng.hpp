#pragma once

#include <cstdint>
#include <initializer_list>

namespace rei {

/// SplitMix64 (Steele, Lea & Flood). Chosen for the whole toolkit because it
/// is tiny, fast, 64-bit portable (integer ops only, no
/// implementation-defined distributions) and trivially splittable into
/// independent substreams, so generated artifacts are reproducible
/// bit-for-bit across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). bound must be nonzero. Uses rejection
  /// sampling so the result is exactly uniform.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  /// true with probability percent/100.
  bool next_percent(std::uint64_t percent) { return next_below(100) < percent; }

 private:
  std::uint64_t state_;
};

/// Avalanche-mixes one word (the SplitMix64 finalizer).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives an independent child stream from a master seed and a path of
/// indices (e.g. {kPnStream, instance_index}). Every distinct path yields a
/// statistically independent stream for any fixed master seed.
inline SplitMix64 substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(seed ^ 0xA0761D6478BD642FULL);
  for (std::uint64_t p : path) {
    s = mix64(s ^ mix64(p + 0x8BB84B93962EACC9ULL));
  }
  return SplitMix64(s);
}

}  // namespace rei
