#pragma once

#include <cstdint>
#include <random>

#include "normbundle/scalar.hpp"

namespace nb {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based seed stream: trial i of a run seeded with `base` always gets
/// the same derived seed, whatever order trials are evaluated in.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// mt19937_64 plus rejection sampling, so draws are identical across
/// standard libraries (std::uniform_int_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [lo, hi].
  long uniform_int(long lo, long hi);
  /// Over Q a uniform integer in [-magnitude, magnitude]; over F_p a uniform residue.
  Scalar scalar(Field field, long magnitude);
  /// As scalar(), but never zero.
  Scalar nonzero_scalar(Field field, long magnitude);

 private:
  std::mt19937_64 engine_;
};

}  // namespace nb
