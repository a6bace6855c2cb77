#pragma once

#include <array>
#include <utility>

#include "ratdyn/types.hpp"

namespace ratdyn {

// Principal square root. Negative reals (either signed zero) map to the
// positive imaginary axis.
Complex principal_sqrt(Complex z);

// Roots of x^2 + b x + c = 0, larger-magnitude root first. The second root
// comes from the product c / x1 to avoid cancellation.
std::pair<Complex, Complex> monic_quadratic_roots(Complex b, Complex c);

using Mat2 = std::array<std::array<Complex, 2>, 2>;

Mat2 operator*(const Mat2& a, const Mat2& b);
inline Complex trace(const Mat2& m) { return m[0][0] + m[1][1]; }
inline Complex det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

// Eigenvalues, larger modulus first.
std::pair<Complex, Complex> eigenvalues(const Mat2& m);

// max |a_ij - b_ij| / max |b_ij|; b is the reference.
double relative_difference(const Mat2& a, const Mat2& b);

double relative_difference(Complex a, Complex b);

}  // namespace ratdyn
