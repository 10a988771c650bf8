#pragma once

#include <cstdint>

namespace ceqc {

/*
 * SplitMix64 stream with a mixed (seed, stream) key. Each Monte Carlo trial
 * owns one stream, so trials are reproducible in isolation and identical
 * regardless of worker scheduling.
 */
struct Rng {
  std::uint64_t state = 0;

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static Rng keyed(std::uint64_t seed, std::uint64_t stream) {
    Rng r;
    r.state = mix(seed) ^ mix(stream * 0xd1342543de82ef95ull + 1);
    return r;
  }

  std::uint64_t next_u64() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  int next_below(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(next_u64()) *
                             static_cast<unsigned __int128>(n)) >>
                            64);
  }

  bool bernoulli(double p) { return next_double() < p; }
};

}  // namespace ceqc
