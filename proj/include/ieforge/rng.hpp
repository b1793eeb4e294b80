#pragma once

// Per-sample random streams. Every sample draws from its own SplitMix64
// stream keyed by (global seed, dataset, sample id), so generated corpora do
// not depend on the order in which samples are processed.
//
// std::shuffle and std::uniform_int_distribution are implementation-defined;
// sampling and shuffling here are spelled out so output bytes are identical
// across standard libraries.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ieforge/json_io.hpp"

namespace ieforge {

inline constexpr uint64_t splitmix64_mix(uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  RngStream(uint64_t seed, std::string_view dataset, std::string_view sample_id) {
    uint64_t key = json_io::fnv1a64(dataset);
    key = json_io::fnv1a64(std::string_view("\x1f", 1), key);
    key = json_io::fnv1a64(sample_id, key);
    state_ = splitmix64_mix(seed ^ 0x6a09e667f3bcc909ULL) ^ splitmix64_mix(key);
  }

  explicit RngStream(uint64_t raw_state) : state_(raw_state) {}

  uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  /// Uniform integer in [0, bound). bound must be positive.
  uint64_t below(uint64_t bound) noexcept {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// k items drawn uniformly without replacement (partial Fisher-Yates).
  /// Returns all items, permuted, when k >= size.
  template <typename T>
  std::vector<T> sample(std::span<const T> items, std::size_t k) {
    std::vector<T> pool(items.begin(), items.end());
    const std::size_t take = std::min(k, pool.size());
    for (std::size_t i = 0; i < take; ++i) {
      const auto j = i + static_cast<std::size_t>(below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(take);
    return pool;
  }

 private:
  uint64_t state_;
};

}  // namespace ieforge
