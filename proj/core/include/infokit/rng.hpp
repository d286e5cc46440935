#pragma once

#include <cstdint>

namespace infokit {

// Counter-based pseudo-random stream: the state is derived purely from
// (seed, trial index), so trial streams can be evaluated in any order and on
// any number of workers without changing a single draw.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial)
      : state_(mix(mix(seed ^ 0x6a09e667f3bcc908ull) +
                   trial * 0x9e3779b97f4a7c15ull)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1): 53 mantissa bits, never returns 1.0.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace infokit
