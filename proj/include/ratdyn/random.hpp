#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "ratdyn/types.hpp"

namespace ratdyn {

// Bit-level conversion so seeded streams are identical across standard libraries.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

// Uniform on the closed square [-h, h] x [-h, h].
inline Complex uniform_box(Rng& rng, double half_width) {
  double re = uniform(rng, -half_width, half_width);
  double im = uniform(rng, -half_width, half_width);
  return {re, im};
}

// Uniform on the open disk |z| < radius.
inline Complex uniform_disk(Rng& rng, double radius) {
  double r = radius * std::sqrt(uniform01(rng));
  double theta = 2.0 * std::numbers::pi * uniform01(rng);
  return std::polar(r, theta);
}

}  // namespace ratdyn
