#ifndef NEARLAP_RNG_HPP
#define NEARLAP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

// Seeded sampling with fully specified algorithms. std::mt19937_64 has a
// standard-mandated output sequence; the distributions below are written out
// here because the standard library's distributions are implementation-defined.

namespace nearlap {

using Rng = std::mt19937_64;

// SplitMix64 finalizer over (seed, stream index); independent per-trial seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform on (0, 1): zero draws are redrawn.
inline double uniform_open01(Rng& rng) {
  double u = 0;
  while (u == 0) u = uniform01(rng);
  return u;
}

// Uniform integer in [0, bound), unbiased by rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

// Standard normal by the Marsaglia polar method; caches the second variate.
class NormalSampler {
 public:
  double operator()(Rng& rng) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0, v = 0, s = 0;
    do {
      u = 2.0 * uniform01(rng) - 1.0;
      v = 2.0 * uniform01(rng) - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  double spare_ = 0;
  bool has_spare_ = false;
};

}  // namespace nearlap

#endif  // NEARLAP_RNG_HPP
