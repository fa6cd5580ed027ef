#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace wg {

/// Gauss-Legendre rule on the reference interval [-1, 1].
template <typename Scalar = double>
struct QuadratureRule {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vector nodes;
  Vector weights;

  [[nodiscard]] int size() const { return static_cast<int>(nodes.size()); }
};

/// Nodes and weights of the q-point Gauss-Legendre rule, 1 <= q <= 32.
///
/// Roots of P_q are found by Newton iteration from the Chebyshev-like
/// initial guess cos(pi (i + 3/4) / (q + 1/2)); the rule is exact for
/// polynomials of degree 2q - 1.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_legendre(int q) {
  if (q < 1 || q > 32) {
    throw std::invalid_argument("gauss_legendre: q must lie in [1, 32], got " +
                                std::to_string(q));
  }
  QuadratureRule<Scalar> rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);

  const Scalar pi = std::numbers::pi_v<Scalar>;
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(q) + Scalar(0.5)));
    Scalar dp = 0;
    for (int it = 0; it < 100; ++it) {
      // three-term recurrence for P_q(x) and P_{q-1}(x)
      Scalar p0 = 1;
      Scalar p1 = x;
      for (int n = 1; n < q; ++n) {
        const Scalar p2 = ((2 * n + 1) * x * p1 - n * p0) / (n + 1);
        p0 = p1;
        p1 = p2;
      }
      const Scalar pq = (q == 1) ? x : p1;
      const Scalar pqm1 = (q == 1) ? Scalar(1) : p0;
      dp = Scalar(q) * (x * pq - pqm1) / (x * x - 1);
      const Scalar dx = pq / dp;
      x -= dx;
      if (std::abs(dx) <= Scalar(1e-16) * std::max(Scalar(1), std::abs(x))) {
        break;
      }
    }
    // recompute the derivative at the converged root for the weight
    {
      Scalar p0 = 1;
      Scalar p1 = x;
      for (int n = 1; n < q; ++n) {
        const Scalar p2 = ((2 * n + 1) * x * p1 - n * p0) / (n + 1);
        p0 = p1;
        p1 = p2;
      }
      const Scalar pq = (q == 1) ? x : p1;
      const Scalar pqm1 = (q == 1) ? Scalar(1) : p0;
      dp = Scalar(q) * (x * pq - pqm1) / (x * x - 1);
    }
    const Scalar w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[q - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) {
    rule.nodes[q / 2] = 0;
  }
  return rule;
}

}  // namespace wg
