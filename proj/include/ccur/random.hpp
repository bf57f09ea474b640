#ifndef CCUR_RANDOM_HPP
#define CCUR_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace ccur {

/// Seeded random stream with uniform and standard-normal draws.
///
/// Variates are derived directly from the raw mt19937_64 output rather than
/// through <random> distributions, whose algorithms are implementation
/// defined. Two Rng instances built from the same (seed, stream) pair
/// produce identical sequences on any conforming standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}

  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal (Box-Muller; draws are consumed in pairs).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  // Uniform on (0, 1); strictly positive so log() stays finite.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace ccur

#endif
