#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace predshare {

// SplitMix64 step; also used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Tiny deterministic generator for parameter draws that must be easy to
// reproduce outside this codebase.
struct SplitMix {
  std::uint64_t state = 0;

  explicit SplitMix(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() { return splitmix64(state); }

  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

// mt19937_64-backed generator for bulk sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Box-Muller; uses both uniforms each call, no state carried over.
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace predshare
