#include "ratdyn/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace ratdyn {

Complex principal_sqrt(Complex z) {
  if (z.imag() == 0.0) z = {z.real(), 0.0};
  return std::sqrt(z);
}

std::pair<Complex, Complex> monic_quadratic_roots(Complex b, Complex c) {
  Complex d = principal_sqrt(b * b - 4.0 * c);
  // pick the sign that adds magnitudes
  if (std::real(std::conj(b) * d) < 0.0) d = -d;
  Complex q = -0.5 * (b + d);
  if (q == Complex{}) return {Complex{}, Complex{}};
  Complex other = (c == Complex{}) ? Complex{} : c / q;
  return {q, other};
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return out;
}

std::pair<Complex, Complex> eigenvalues(const Mat2& m) {
  auto [x1, x2] = monic_quadratic_roots(-trace(m), det(m));
  if (std::abs(x2) > std::abs(x1)) std::swap(x1, x2);
  return {x1, x2};
}

double relative_difference(const Mat2& a, const Mat2& b) {
  double diff = 0.0, scale = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      diff = std::max(diff, std::abs(a[i][j] - b[i][j]));
      scale = std::max(scale, std::abs(b[i][j]));
    }
  return scale > 0.0 ? diff / scale : diff;
}

double relative_difference(Complex a, Complex b) {
  double scale = std::abs(b);
  return scale > 0.0 ? std::abs(a - b) / scale : std::abs(a - b);
}

}  // namespace ratdyn
