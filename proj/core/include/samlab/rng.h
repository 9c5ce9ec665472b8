#pragma once

#include <cstdint>
#include <vector>

namespace samlab {

// Portable 64-bit generator (splitmix64 stepping) with deterministic
// substream derivation. Every stochastic run owns one stream; parallel
// trials derive independent streams from (seed, trial index). The state
// transition and output depend only on integer arithmetic, so identical
// seeds give bit-identical streams on every platform.
class SplitMix64 {
 public:
  SplitMix64() : state_(0) {}
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random mantissa bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Derive an independent stream for the given index. Mixes the current
  // state with the index through two generator steps; does not advance
  // this stream.
  SplitMix64 substream(uint64_t index) const {
    SplitMix64 child(state_ ^ (0xD1B54A32D192ED03ULL * (index + 1)));
    child.next_u64();
    child.next_u64();
    return child;
  }

  // Inverse-CDF sample over cumulative probabilities (last entry == 1).
  // Returns the first index i with u < cumulative[i].
  int sample_index(const std::vector<double>& cumulative) {
    double u = next_unit();
    for (size_t i = 0; i + 1 < cumulative.size(); ++i)
      if (u < cumulative[i]) return static_cast<int>(i);
    return static_cast<int>(cumulative.size()) - 1;
  }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

}  // namespace samlab
