#pragma once

#include <cstdint>
#include <random>

#include "bw/tensor.hpp"

namespace bw {

inline constexpr double kRationalDenominator = 1e6;

/// Rounds to the nearest multiple of 1/kRationalDenominator.
double rationalize(double x);

/// Deterministic draws from std::mt19937_64. Every draw is taken from the raw
/// 64-bit output (top 53 bits) so results do not depend on the standard
/// library's distribution implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double unit();  // [0,1)
  double uniform(double lo, double hi);
  cd complex_uniform(double lo, double hi);

  /// Real momentum with components in [-1,1] and |p^2| > 0.1.
  Momentum generic_momentum();
  /// Spatial part drawn in [-1,1]; energy fixed so that p^2 = x.
  Momentum on_shell_momentum(cd x);

 private:
  std::mt19937_64 gen_;
};

}  // namespace bw
