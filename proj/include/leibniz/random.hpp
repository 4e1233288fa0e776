#pragma once

#include <cstdint>
#include <random>

#include "leibniz/scalar.hpp"

namespace leibniz {

// Seeded generator whose output sequence is identical on every platform
// (std::uniform_int_distribution is implementation-defined, so ranges are
// mapped by hand).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1U;
    return lo + static_cast<long>(engine_() % span);
  }

  bool coin() { return (engine_() & 1U) != 0; }

  // Small rational drawn from numerators in [-bound, bound] and denominators
  // in {1, 2, 3}.
  Scalar small_rational(long bound) {
    long num = uniform(-bound, bound);
    long den = uniform(1, 3);
    return make_scalar(num, den);
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace leibniz
