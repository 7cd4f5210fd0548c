#include "normbundle/random.hpp"

#include "normbundle/errors.hpp"

namespace nb {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(base) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw ComputationError("Rng::below(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

long Rng::uniform_int(long lo, long hi) {
  if (hi < lo) throw ComputationError("Rng::uniform_int with empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(below(span));
}

Scalar Rng::scalar(Field field, long magnitude) {
  if (field.is_rational()) return Scalar(field, uniform_int(-magnitude, magnitude));
  return Scalar::from_residue(field, below(field.characteristic()));
}

Scalar Rng::nonzero_scalar(Field field, long magnitude) {
  for (;;) {
    Scalar s = scalar(field, magnitude);
    if (!s.is_zero()) return s;
  }
}

}  // namespace nb
