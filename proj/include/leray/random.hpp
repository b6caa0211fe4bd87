#pragma once

#include <cstdint>
#include <random>

namespace leray {

/// Seeded uniform source. mt19937_64's output sequence is fixed by the standard and the
/// double conversion is explicit, so samples are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace leray
