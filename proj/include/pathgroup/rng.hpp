#pragma once

// Counter-keyed random streams. Trial k of a run seeded with s draws from
// SplitMix64 started at stream_seed(s, k), so any partition of trials over
// workers reproduces the same numbers.

#include <cstdint>
#include <limits>

namespace pathgroup {

/// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// stream_seed(s, k) = mix64(s ^ mix64(k + golden)) with golden = 0x9E3779B97F4A7C15.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline SplitMix64 make_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(stream_seed(seed, index));
}

}  // namespace pathgroup
