#include "frechet/random.hpp"

namespace frechet {

double Rng::uniform() {
  // 53-bit mantissa, centred in its cell: (k + 0.5) / 2^53 lies strictly in (0,1).
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double Rng::gamma(double shape, double rate) {
  std::gamma_distribution<double> dist(shape, 1.0 / rate);
  return dist(engine_);
}

double Rng::normal() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

RCompatibleUniform::RCompatibleUniform(std::int32_t seed) {
  auto s = static_cast<std::uint32_t>(seed);
  for (int j = 0; j < 50; ++j) s = 69069u * s + 1u;
  // The first generated word is R's position slot (dummy[0]); FixupSeeds
  // overwrites it with N so the first draw regenerates the state.
  s = 69069u * s + 1u;
  for (int j = 0; j < kN; ++j) {
    s = 69069u * s + 1u;
    mt_[static_cast<std::size_t>(j)] = s;
  }
  mti_ = kN;
}

void RCompatibleUniform::regenerate() {
  constexpr std::uint32_t kMatrixA = 0x9908b0dfu;
  constexpr std::uint32_t kUpper = 0x80000000u;
  constexpr std::uint32_t kLower = 0x7fffffffu;
  for (int kk = 0; kk < kN; ++kk) {
    const auto i = static_cast<std::size_t>(kk);
    const std::uint32_t y = (mt_[i] & kUpper) | (mt_[(i + 1) % kN] & kLower);
    mt_[i] = mt_[(i + kM) % kN] ^ (y >> 1) ^ ((y & 1u) ? kMatrixA : 0u);
  }
  mti_ = 0;
}

double RCompatibleUniform::operator()() {
  constexpr double kI2_32m1 = 2.328306437080797e-10;
  if (mti_ >= kN) regenerate();
  std::uint32_t y = mt_[static_cast<std::size_t>(mti_++)];
  y ^= (y >> 11);
  y ^= (y << 7) & 0x9d2c5680u;
  y ^= (y << 15) & 0xefc60000u;
  y ^= (y >> 18);
  const double u = static_cast<double>(y) * 2.3283064365386963e-10;
  // R's fixup(): keep the value strictly inside (0,1).
  if (u <= 0.0) return 0.5 * kI2_32m1;
  if (1.0 - u <= 0.0) return 1.0 - 0.5 * kI2_32m1;
  return u;
}

}  // namespace frechet
