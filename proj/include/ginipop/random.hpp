#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ginipop {

/// SplitMix64 generator. The seed->output mapping below is part of the
/// published interface of every seeded command and must not change:
///   next():  state += 0x9E3779B97F4A7C15; return scramble(state)
///   scramble(z): z ^= z>>30; z *= 0xBF58476D1CE4E5B9;
///                z ^= z>>27; z *= 0x94D049BB133111EB; z ^= z>>31
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t scramble(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return scramble(state_);
  }

  /// Unbiased uniform draw from [0, bound): rejection below
  /// 2^64 mod bound, then plain modulo.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// Independent substream for trial `index` of a seeded experiment.
/// Stream seed = scramble(seed + (index+1) * 0x9E3779B97F4A7C15).
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(SplitMix64::scramble(seed + (index + 1) * 0x9E3779B97F4A7C15ULL));
}

/// First k positions of a partial Fisher-Yates shuffle of [0, n):
/// for i in 0..k-1, swap pool[i] with pool[i + rng.next_below(n - i)].
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                           SplitMix64& rng) {
  if (k > n) throw std::invalid_argument("sample_without_replacement: k exceeds n");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace ginipop
