#pragma once

#include <cstdint>
#include <random>

namespace heatpot {

// Seeded generator with platform-independent output. std::mt19937_64 has a
// fully specified sequence; the double and index mappings below avoid
// std::uniform_*_distribution, whose results are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in {0, ..., n-1} by rejection; n must be positive.
  std::uint64_t next_index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  double uniform(double a, double b) { return a + (b - a) * next_double(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace heatpot
