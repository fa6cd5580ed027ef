#pragma once

#include <Eigen/Core>

#include "wg/basis.hpp"
#include "wg/mesh.hpp"

namespace wg {

/// Ordering of the local degrees of freedom of a weak function on one cell:
/// the (k+1)^2 interior coefficients, then for each side (south, east, north,
/// west) the k+1 trace coefficients, the k+1 x-gradient coefficients and the
/// k+1 y-gradient coefficients. Edge coefficients are in the edge's own
/// orientation, shared by both neighbouring cells.
struct LocalDofLayout {
  int k = 3;

  [[nodiscard]] int n_interior() const { return (k + 1) * (k + 1); }
  [[nodiscard]] int n_edge() const { return k + 1; }
  [[nodiscard]] int n_side() const { return 3 * (k + 1); }
  [[nodiscard]] int size() const { return n_interior() + 4 * n_side(); }

  [[nodiscard]] int side_offset(Side s) const {
    return n_interior() + static_cast<int>(s) * n_side();
  }
  [[nodiscard]] int trace(Side s) const { return side_offset(s); }
  /// First coefficient of gradient component c (0 = x, 1 = y) on side s.
  [[nodiscard]] int gradient(Side s, int c) const { return side_offset(s) + (1 + c) * n_edge(); }
};

struct LocalOperators {
  Eigen::MatrixXd L;  // weak Laplacian, (k+1)^2 x n_loc
  Eigen::MatrixXd G;  // weak gradient, x block over y block, 2 (k+1)^2 x n_loc
  Eigen::MatrixXd S;  // stabilizer, n_loc x n_loc
  Eigen::MatrixXd A;  // eps^2 L^T L + G^T G + S
};

/// Weights of the two stabilizer terms for the global fine/coarse widths.
struct StabilizerWeights {
  double gradient = 0;  // eps^2 / h
  double trace = 0;     // eps^2 / (h^2 H) + 1 / H

  static StabilizerWeights from_widths(double eps, double h, double H);
};

Eigen::MatrixXd weak_laplacian_matrix(const Cell& cell, int k, int q);
inline Eigen::MatrixXd weak_laplacian_matrix(const Cell& cell, int k) {
  return weak_laplacian_matrix(cell, k, default_quadrature(k));
}

Eigen::MatrixXd weak_gradient_matrix(const Cell& cell, int k, int q);
inline Eigen::MatrixXd weak_gradient_matrix(const Cell& cell, int k) {
  return weak_gradient_matrix(cell, k, default_quadrature(k));
}

/// h and H are the global fine and coarse mesh widths, used on every cell.
Eigen::MatrixXd stabilizer_matrix(const Cell& cell, int k, double eps, double h, double H, int q);
inline Eigen::MatrixXd stabilizer_matrix(const Cell& cell, int k, double eps, double h,
                                         double H) {
  return stabilizer_matrix(cell, k, eps, h, H, default_quadrature(k));
}

LocalOperators local_operators(const Cell& cell, int k, double eps, double h, double H, int q);

Eigen::MatrixXd local_stiffness(const Cell& cell, int k, double eps, double h, double H, int q);
inline Eigen::MatrixXd local_stiffness(const Cell& cell, int k, double eps, double h, double H) {
  return local_stiffness(cell, k, eps, h, H, default_quadrature(k));
}

}  // namespace wg
