#pragma once

#include <complex>

namespace ratdyn {

using Complex = std::complex<double>;

// One instance of z_{n+1} = (alpha + z_{n-1}) / (beta z_n + z_{n-1}).
// Stored as given; consumers decide what degenerate values mean for them.
struct Params {
  Complex alpha;
  Complex beta;

  friend bool operator==(const Params&, const Params&) = default;
};

// (z_prev, z_curr) = (z_{n-1}, z_n). n is the index of z_curr.
struct OrbitState {
  Complex z_prev;
  Complex z_curr;
  long n = 0;

  friend bool operator==(const OrbitState&, const OrbitState&) = default;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace ratdyn
