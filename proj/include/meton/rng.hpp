#pragma once

#include <cstdint>
#include <vector>

// Deterministic RNG used everywhere randomness is needed. std::mt19937_64 has
// a standard-mandated sequence, but the std distributions do not, so index and
// real draws are implemented here to keep outputs identical across toolchains.

namespace meton {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

  // splitmix64 step
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n); n > 0
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  // uniform in [0, 1)
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-a, a]
  double symmetric(double a) { return (2.0 * real() - 1.0) * a; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // Stable per-item sub-seed, independent of processing order.
  static std::uint64_t derive(std::uint64_t base, std::uint64_t item) {
    Rng r(base ^ (item * 0xD6E8FEB86659FD93ULL + 0xA5A5A5A5A5A5A5A5ULL));
    return r.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace meton
