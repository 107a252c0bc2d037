// Deterministic uniform random numbers for instance generation and tests.
//
// std::mt19937_64 has a portable output stream, but the standard
// distributions do not, so the [0,1) mapping is done by hand: identical
// seeds give byte-identical instances on every platform.
#pragma once

#include <cstdint>
#include <random>

namespace certdecomp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform in [0,1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t next() { return gen_(); }

  int index(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace certdecomp
