#pragma once

// Counter-based RNG: every draw is a pure function of (key, counter), so
// parallel samplers stay reproducible no matter how work is scheduled.

#include <cstdint>

namespace corrlab {

namespace rng_detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
} // namespace rng_detail

class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(rng_detail::splitmix64(seed ^ (0x6a09e667f3bcc909ULL + stream * 0x3c6ef372fe94f82bULL))) {}

  std::uint64_t next_u64() {
    return rng_detail::splitmix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
  }

  // uniform in [0,1) with 53 random bits
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform integer in [lo, hi] inclusive
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace corrlab
