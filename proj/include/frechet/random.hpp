#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace frechet {

// Seeded random stream. One per chain/replication; never shared across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double uniform();
  // Gamma variate with the given shape and rate (mean shape / rate).
  double gamma(double shape, double rate);
  double normal();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Bit-compatible with R's default uniform generator: Mersenne-Twister seeded
// through set.seed(), i.e. 50 LCG scrambles, 625 LCG words, 32-bit output
// scaled by 2^-32. Used to regenerate samples published alongside R code.
class RCompatibleUniform {
 public:
  explicit RCompatibleUniform(std::int32_t seed);
  double operator()();

 private:
  static constexpr int kN = 624;
  static constexpr int kM = 397;
  void regenerate();

  std::array<std::uint32_t, kN> mt_{};
  int mti_ = kN;
};

}  // namespace frechet
