#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace cpd {

// Advances a SplitMix64 state and returns the next output word.
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 64-bit finalizer used to derive sub-seeds (bootstrap passes, per-n curves).
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t a = seed;
  std::uint64_t b = tag ^ 0x632be59bd9b4e019ULL;
  return splitmix64_next(a) ^ (splitmix64_next(b) * 0xd1b54a32d192ed03ULL);
}

// xoshiro256++ (Blackman/Vigna). One independent instance per Monte Carlo
// replicate: the state is a hash of (seed, stream), so replicate `stream`
// produces the same draws no matter which worker runs it or in what order.
class Xoshiro256pp {
 public:
  Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t st = derive_seed(seed, stream);
    for (auto& word : s_) word = splitmix64_next(st);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9e3779b97f4a7c15ULL;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on (0, 1]; never returns 0 so log() stays finite.
  double uniform01() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Standard normal draws via the Box-Muller transform (the one generation
// method used everywhere, so a fixed (seed, stream) pair is reproducible).
class NormalSampler {
 public:
  NormalSampler(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = rng_.uniform01();
    const double u2 = rng_.uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  Xoshiro256pp rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace cpd
