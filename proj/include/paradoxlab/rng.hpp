#pragma once

#include <cstdint>
#include <limits>

namespace paradoxlab {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Independent stream for unit `unit` of an experiment seeded with `seed`.
/// Streams depend only on (seed, unit), so results do not depend on how
/// units are scheduled across threads.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  StreamRng(std::uint64_t seed, std::uint64_t unit)
      : state_(splitmix64(seed) ^ splitmix64(unit * 0xD1B54A32D192ED03ULL + 1)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, 2^bits).
  std::uint64_t bits(unsigned count) { return (*this)() >> (64 - count); }

  /// Uniform integer in [0, bound) by rejection; platform independent.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t v = (*this)();
    while (v >= limit) v = (*this)();
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

}  // namespace paradoxlab
