#pragma once

// Deterministic random sampling for probes and tests.
//
// mt19937_64 with the uniform deviate derived by a fixed bit recipe rather
// than std::uniform_real_distribution, whose output is not pinned by the
// standard; identical seeds give identical streams on every platform.

#include <cstdint>
#include <random>

namespace psih {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * next_unit(); }

  // Uniform integer in [a, b] inclusive; rejection sampling avoids modulo
  // bias.
  int uniform_int(int a, int b) {
    const std::uint64_t n = static_cast<std::uint64_t>(b - a) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return a + static_cast<int>(x % n);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace psih
