#pragma once

#include <array>
#include <cmath>

#include <Eigen/Core>

namespace wg {

/// Legendre polynomials normalized to be orthonormal on [-1, 1], together
/// with their first and second derivatives. Row n of the result holds
/// (p_n(t), p_n'(t), p_n''(t)) for n = 0..degree.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 3> legendre_orthonormal(int degree, Scalar t) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 3> out(degree + 1, 3);
  // unnormalized P_n, P_n', P_n''
  Scalar p0 = 1, d0 = 0, s0 = 0;
  Scalar p1 = t, d1 = 1, s1 = 0;
  out.row(0) << p0, d0, s0;
  if (degree >= 1) {
    out.row(1) << p1, d1, s1;
  }
  for (int n = 1; n < degree; ++n) {
    const Scalar a = Scalar(2 * n + 1) / Scalar(n + 1);
    const Scalar b = Scalar(n) / Scalar(n + 1);
    const Scalar p2 = a * t * p1 - b * p0;
    const Scalar d2 = a * (p1 + t * d1) - b * d0;
    const Scalar s2 = a * (2 * d1 + t * s1) - b * s0;
    out.row(n + 1) << p2, d2, s2;
    p0 = p1, d0 = d1, s0 = s1;
    p1 = p2, d1 = d2, s1 = s2;
  }
  for (int n = 0; n <= degree; ++n) {
    out.row(n) *= std::sqrt(Scalar(2 * n + 1) / Scalar(2));
  }
  return out;
}

}  // namespace wg
