#pragma once

#include <cstdint>

#include "patchdyn/model.hpp"

namespace patchdyn {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: the k-th draw depends only on (key, k), so streams
// can be split by seed / cell / probe without shared state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  static CounterRng split(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return CounterRng(mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL)));
  }
  std::uint64_t next() { return mix64(key_ ^ mix64(counter_++)); }
  // [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// x_i in (0.1 K_i, K_i), y_i in (0.1, 10)
inline State4 random_interior_start(const ModelParams& p, CounterRng& rng) {
  State4 s;
  s[kX1] = rng.uniform(0.1, 1.0) * p.K1;
  s[kY1] = rng.uniform(0.1, 10.0);
  s[kX2] = rng.uniform(0.1, 1.0) * p.K2;
  s[kY2] = rng.uniform(0.1, 10.0);
  return s;
}

}  // namespace patchdyn
