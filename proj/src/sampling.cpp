#include "bw/sampling.hpp"

#include <cmath>

namespace bw {

double rationalize(double x) { return std::round(x * kRationalDenominator) / kRationalDenominator; }

double Sampler::unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

double Sampler::uniform(double lo, double hi) { return rationalize(lo + (hi - lo) * unit()); }

cd Sampler::complex_uniform(double lo, double hi) {
  const double re = uniform(lo, hi);
  const double im = uniform(lo, hi);
  return {re, im};
}

Momentum Sampler::generic_momentum() {
  for (;;) {
    Momentum p;
    for (auto& c : p.up) c = uniform(-1.0, 1.0);
    if (std::abs(p.p2()) > 0.1) return p;
  }
}

Momentum Sampler::on_shell_momentum(cd x) {
  Momentum p;
  cd k2 = 0;
  for (int i = 1; i < 4; ++i) {
    p.up[static_cast<std::size_t>(i)] = uniform(-1.0, 1.0);
    k2 += p.up[static_cast<std::size_t>(i)] * p.up[static_cast<std::size_t>(i)];
  }
  p.up[0] = std::sqrt(x + k2);
  return p;
}

}  // namespace bw
