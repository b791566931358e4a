#pragma once

// Seedable random source with a fixed, documented algorithm.
//
// Engine: xoshiro256** (Blackman & Vigna), state filled from SplitMix64 of
// the seed. It is seeded once per protocol round, so a cheap seeding step
// matters; std::mt19937_64 spends more time initialising than a whole round
// takes. Uniform and Gaussian variates are derived here rather than through
// <random> distributions, whose algorithms are implementation defined:
//   uniform01  = (x >> 11) * 2^-53                      (53-bit mantissa)
//   gaussian   = Box-Muller on two uniforms, cosine branch only
// Sub-stream seeds come from SplitMix64 over (parent seed, stream index),
// so round i of a session can be regenerated without replaying rounds
// 0..i-1 and batches can be split across workers.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace hqk {

using Seed = std::uint64_t;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic child seed for stream `index` of `parent`.
constexpr Seed derive_seed(Seed parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& w : s_) {
      w = splitmix64(x);
      x += 0x9e3779b97f4a7c15ULL;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  double gaussian(double mean = 0.0, double stddev = 1.0) {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  Xoshiro256StarStar engine_;
};

}  // namespace hqk
