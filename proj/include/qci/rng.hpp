#pragma once

#include <cmath>
#include <cstdint>

#include "qci/linalg.hpp"

namespace qci {

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// engines so that seeded runs are reproducible independent of the standard
/// library implementation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform01();
    if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

/// Independent deterministic stream derived from (seed, stream index).
inline SplitMix64 fork_rng(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mixer(seed ^ (0xA0761D6478BD642FULL + stream * 0xE7037ED1A0B428DBULL));
  return SplitMix64(mixer.next());
}

ComplexMatrix random_complex_gaussian(SplitMix64& rng, int rows, int cols);
ComplexVector random_ket(SplitMix64& rng, int dim);

}  // namespace qci
