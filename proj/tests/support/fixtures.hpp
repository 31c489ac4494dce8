#pragma once

#include <cstdint>
#include <random>

#include "lgdelay/model.hpp"

namespace fixtures {

/// Uniform draw in [lo, hi) from raw generator bits.
inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(g() >> 11) * 0x1.0p-53);
}

/// Random valid model parameters spanning a few orders of magnitude.
inline lgdelay::ModelParams random_params(std::mt19937_64& g) {
  lgdelay::ModelParams p;
  p.r1 = uniform(g, 0.05, 3.0);
  p.r2 = uniform(g, 0.05, 3.0);
  p.a = uniform(g, 0.05, 3.0);
  p.K = uniform(g, 0.1, 5.0);
  p.gamma = uniform(g, 0.1, 3.0);
  p.m = uniform(g, 0.0, 0.95);
  p.l = uniform(g, 0.5, 5.0);
  p.d1 = uniform(g, 0.01, 2.0);
  p.d2 = uniform(g, 0.01, 2.0);
  return p;
}

}  // namespace fixtures
