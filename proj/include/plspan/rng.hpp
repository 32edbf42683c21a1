#pragma once

#include <cstdint>
#include <random>

namespace plspan {

// Deterministic integer sampler over std::mt19937_64.  The engine's output
// sequence is fixed by the standard, and we avoid std::uniform_int_distribution
// (whose mapping is implementation-defined), so identical seeds give
// identical draws on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  // Integer in [lo, hi]; the tiny modulo bias is irrelevant for sampling
  // candidate coordinates.
  long long uniform(long long lo, long long hi) {
    return lo +
           static_cast<long long>(eng_() %
                                  static_cast<uint64_t>(hi - lo + 1));
  }

  uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace plspan
