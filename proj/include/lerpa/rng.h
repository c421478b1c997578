#ifndef LERPA_RNG_H_
#define LERPA_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace lerpa {

// Seeded random source. Uniform draws are computed from raw engine output so
// that results do not depend on the standard library's distribution
// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  // Uniform integer on [0, n). n must be positive.
  std::size_t below(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent seed for a numbered sub-stream (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace lerpa

#endif  // LERPA_RNG_H_
