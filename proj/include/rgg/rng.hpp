#pragma once
// Deterministic randomness. Per-trial seeds come from a splitmix64 finalizer
// over (master_seed, trial_index); the point stream itself is xoshiro256++.
// Uniform reals use the 53-bit mantissa convention (top bits / 2^53), so the
// same seed produces the same bits on every platform.

#include <cstdint>

namespace rgg {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// splitmix64 stream; used only to expand a seed into engine state.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += detail::kGolden;
    return detail::splitmix_finalize(state_);
  }

 private:
  std::uint64_t state_;
};

// Seed for trial `index` under `master`. This is the splitmix64 output at
// position index+1 of the stream seeded with `master`.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return detail::splitmix_finalize(master + (index + 1) * detail::kGolden);
}

// xoshiro256++ (Blackman & Vigna). State expanded from the seed via splitmix64.
class Xoshiro256pp {
 public:
  explicit constexpr Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
  }

  constexpr std::uint64_t next() {
    const std::uint64_t result = detail::rotl64(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl64(s_[3], 45);
    return result;
  }

  // Uniform double in [0,1): top 53 bits scaled by 2^-53.
  constexpr double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t s_[4] = {};
};

}  // namespace rgg
