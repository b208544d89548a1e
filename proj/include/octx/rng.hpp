#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "octx/errors.hpp"

namespace octx {

/// splitmix64 step; used to derive independent stream seeds from one root seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic RNG wrapper. std::*_distribution is implementation-defined,
/// so all draws go through fixed bit-level recipes to keep every artifact
/// byte-reproducible for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Seed derived from (seed, tag, subtag); independent streams per module.
  static Rng derived(std::uint64_t seed, std::uint64_t tag, std::uint64_t subtag = 0) {
    std::uint64_t s = seed;
    splitmix64(s);
    s ^= 0x632be59bd9b4e019ull * (tag + 1);
    splitmix64(s);
    s ^= 0x9e6c63d0876a9a47ull * (subtag + 1);
    return Rng(splitmix64(s));
  }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0,1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n == 0) throw ParameterError("uniform_int: n must be positive");
    // rejection sampling keeps the draw unbiased
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller (one value per call, cache discarded).
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// k distinct elements of v, order randomized (partial Fisher-Yates).
  template <typename T>
  std::vector<T> sample(const std::vector<T>& v, std::size_t k) {
    if (k > v.size()) throw ParameterError("sample: k exceeds population size");
    std::vector<T> pool = v;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform_int(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace octx
