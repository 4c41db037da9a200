#pragma once

#include <cstdint>

namespace magicflow {

// SplitMix64 (Steele, Lea, Vigna). Fixed, portable generator so that
// identical seeds reproduce identical workloads across platforms and
// language ports. std::mt19937 output would also be portable, but the
// distributions on top of it are not; we sample everything from raw
// 64-bit output instead.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 bits of precision.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Modulo bias is irrelevant here; we only
  // need determinism, not statistical perfection.
  std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace magicflow
