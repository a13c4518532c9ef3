#pragma once

#include <cstdint>

namespace evograph {

// Deterministic randomness for the whole artifact. The bit-stream is pinned
// so that a run is reproducible from its seed alone, including by
// reimplementations in other languages:
//
//   SplitMix64 (Steele/Lea/Vigna):
//     state += 0x9E3779B97F4A7C15
//     z = state;  z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//                 z = (z ^ z>>27) * 0x94D049BB133111EB;  output z ^ z>>31
//
//   xoshiro256** (Blackman/Vigna): s[0..3] are four successive SplitMix64
//     outputs of the seed; output = rotl(s[1]*5, 7) * 9.
//
//   uniform_u64(lo, hi): rejection-sampled to stay unbiased. With
//     span = hi-lo+1 and rem = 2^64 mod span, raw draws r > 2^64-1-rem are
//     discarded; the result is lo + r % span.
//
//   next_double(): (next() >> 11) * 2^-53, uniform in [0, 1).
//
// A master seed fans out into labeled sub-streams via derive_stream():
// stream k is seeded with the (k+1)-th SplitMix64 output of the master seed.
// Labels in use: 0 = graph generation, 1 = evolution coins, 2 = growth.

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

class Xoshiro256StarStar {
 public:
  explicit Xoshiro256StarStar(std::uint64_t seed = 0) {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1), 53 significant bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [lo, hi], both inclusive. Unbiased.
  std::uint64_t uniform_u64(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return next();  // full 64-bit range
    const std::uint64_t rem = (UINT64_MAX % span + 1) % span;  // 2^64 mod span
    std::uint64_t r = next();
    while (rem != 0 && r > UINT64_MAX - rem) r = next();
    return lo + r % span;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
};

namespace stream {
inline constexpr std::uint64_t kGeneration = 0;
inline constexpr std::uint64_t kEvolution = 1;
inline constexpr std::uint64_t kGrowth = 2;
}  // namespace stream

/// Seed for labeled sub-stream `stream` of a master seed.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 sm(seed);
  std::uint64_t out = sm.next();
  for (std::uint64_t i = 0; i < stream; ++i) out = sm.next();
  return out;
}

}  // namespace evograph
