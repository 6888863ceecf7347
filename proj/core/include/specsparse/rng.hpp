#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace specsparse {

// Seeded randomness helpers.
//
// Everything random in this library goes through Rng so that a run is a pure
// function of its seed.  We deliberately avoid std::uniform_int_distribution
// and friends: the standard does not pin down their algorithms, so the same
// seed can produce different streams on different standard libraries.  The
// rejection sampling below is fixed for good.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound).  bound == 0 is a caller bug.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling over the top of the range to kill modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  int index(std::size_t n) { return static_cast<int>(below(n)); }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    // Fisher-Yates, spelled out so the visitation order is ours, not the
    // standard library's.
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Derives a child seed for a named stream.  Based on the splitmix64 finalizer,
// which mixes well enough that (base, stream) pairs do not collide in
// practice.  Used to hand independent generators to repetitions / workers
// without the streams overlapping.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace specsparse
