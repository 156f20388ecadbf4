#pragma once

#include <cstdint>
#include <random>

namespace netlock {

/// Seed for the deterministic generators. Identical seed + identical generator
/// parameters produce bit-identical output on every platform.
struct RngSeed {
  std::uint64_t value = 0;
};

/// mt19937_64 with portable bounded draws. The std distributions are
/// implementation-defined, so indices and reals are derived from raw 64-bit
/// output directly.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n) by rejection sampling (unbiased).
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % n;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace netlock
