#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace ekr {

/// Default seed for sampled runs.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED'2010'EC0D'EULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed for a (seed, tag...) path. Depends only on the path, never on
/// the order in which children are drawn.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(seed);
  for (auto t : path) s = splitmix64(s ^ splitmix64(t + 0x632BE59BD9B4E019ULL));
  return s;
}

/// Counter-based generator: the i-th draw is splitmix64(key + i).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next() { return splitmix64(key_ + counter_++ * 0x9E3779B97F4A7C15ULL); }

  /// Uniform value in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Uniform permutation of [1..n] (Fisher-Yates).
inline std::vector<std::uint32_t> random_permutation(std::uint32_t n, CounterRng& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 1U);
  for (std::uint32_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

}  // namespace ekr
