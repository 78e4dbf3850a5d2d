#pragma once

#include <cstdint>

namespace shadowing {

// SplitMix64 stream. Used instead of <random> engines so that generated
// pseudo-orbits are bitwise reproducible across standard libraries and
// process restarts.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53-bit resolution
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // uniform in {0, ..., n-1}; n must be positive and small (fixed-point multiply)
  std::uint64_t next_below(std::uint64_t n) {
    return std::uint64_t((__uint128_t(next_u64()) * n) >> 64);
  }

  bool next_bool() { return (next_u64() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

// Stream derived from (seed, index). Pseudo-orbit tails draw the
// perturbation for step i from stream_for_index(seed, i), so point
// retrieval is independent of evaluation order.
inline RngStream stream_for_index(std::uint64_t seed, long long index) {
  std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(index + 0x3f2e1d0c5b4a6978LL));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return RngStream(z ^ (z >> 31));
}

}  // namespace shadowing
