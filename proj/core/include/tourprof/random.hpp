#pragma once

#include <cstdint>
#include <random>

namespace tourprof {

// Deterministic random source shared by every generator.
//
// The engine is std::mt19937_64 seeded with the 64-bit seed through its
// standard single-value constructor, so its output sequence is fixed by the
// C++ standard. All derived draws are defined here, bit-for-bit:
//   coin()         top bit of one engine output
//   uniform01()    (output >> 11) * 2^-53, in [0, 1)
//   bernoulli(p)   uniform01() < p
//   index(n)       high 64 bits of (output * n), in [0, n)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  bool coin() { return (engine_() >> 63) != 0; }

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tourprof
