#pragma once

#include <cstdint>

#include "qreduce/types.hpp"

// Counter-based random streams. Monte Carlo trials each get their own
// stream derived from (seed, trial_index), so a sweep partitioned across
// any number of worker threads consumes exactly the same randomness per
// trial as a serial run. The generator is splitmix64: a Weyl sequence with
// a strong 64->64 finalizer. We avoid std::<distribution> types on purpose:
// their algorithms are implementation-defined, and the output here must be
// reproducible bit for bit from the seed alone.
namespace qreduce {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  Real uniform() { return static_cast<Real>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

// Stream for one trial: mix the trial index into the seed with the same
// golden-ratio stride splitmix64 itself uses, then finalize once so that
// neighbouring trials land far apart in state space.
inline SplitMix64 stream(std::uint64_t seed, std::uint64_t trial_index) {
  std::uint64_t z = seed ^ (0xD1B54A32D192ED03ULL * (trial_index + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return SplitMix64(z ^ (z >> 31));
}

}  // namespace qreduce
