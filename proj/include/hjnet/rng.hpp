#pragma once

#include <cstdint>
#include <random>

namespace hjnet {

// All randomness flows through this wrapper. mt19937_64 plus an explicit
// bit-to-double mapping, so streams are identical across standard libraries
// (std::uniform_real_distribution output is not pinned by the standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // [0, n); modulo bias is irrelevant at the n used here.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(next_u64() % n);
  }

  static const char* name() { return "mt19937_64/53bit-v1"; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hjnet
