#pragma once

#include <cstdint>
#include <limits>

namespace kruskal {

__extension__ using Uint128 = unsigned __int128;

// (master_seed, stream_id) fixes every random draw made from it.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Key for draw sequence `index` within a seed's stream (index is a trial
// number for Monte Carlo work, 0 for one-off draws).
constexpr std::uint64_t derive_key(const SeedSpec& seed, std::uint64_t index) noexcept {
  std::uint64_t k = mix64(seed.master_seed + kGoldenGamma);
  k = mix64(k ^ mix64(seed.stream_id * 0xd1b54a32d192ed03ULL + 1));
  return mix64(k ^ mix64(index * 0xa0761d6478bd642fULL + 2));
}

// Counter-based generator: the n-th output is mix64(key + n * gamma), so a
// draw depends only on (key, n) and never on which thread produced it.
// Satisfies UniformRandomBitGenerator, but sampling helpers below are used
// instead of <random> distributions so results match across standard
// libraries.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}
  CounterRng(const SeedSpec& seed, std::uint64_t index) noexcept : key_(derive_key(seed, index)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGoldenGamma); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, bound), bound >= 1. Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound) noexcept {
    Uint128 m = static_cast<Uint128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<Uint128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform integer on [lo, hi].
  int between(int lo, int hi) noexcept {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace kruskal
