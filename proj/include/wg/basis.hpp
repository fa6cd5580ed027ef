#pragma once

#include <functional>
#include <utility>

#include <Eigen/Core>

#include "wg/mesh.hpp"
#include "wg/quadrature.hpp"

namespace wg {

using ScalarField = std::function<double(double x, double y)>;
using VectorField = std::function<Eigen::Vector2d(double x, double y)>;

/// Default number of Gauss points per direction for degree k.
inline int default_quadrature(int k) { return k + 3; }

/// Orthonormal tensor-Legendre basis of Q_k(T) evaluated at a set of points.
///
/// Basis member (m, n) is sqrt(2/h1) p_m(t1) * sqrt(2/h2) p_n(t2) with t the
/// reference coordinate on [-1, 1], stored at index m * (k + 1) + n. Every
/// table is (points x (k+1)^2).
struct CellBasis {
  int k = 0;
  Eigen::Matrix2Xd points;
  Eigen::VectorXd weights;  // physical weights; empty when built from raw points
  Eigen::MatrixXd value;
  Eigen::MatrixXd dx;
  Eigen::MatrixXd dy;
  Eigen::MatrixXd dxx;
  Eigen::MatrixXd dyy;

  [[nodiscard]] int dim() const { return (k + 1) * (k + 1); }
  [[nodiscard]] Eigen::MatrixXd laplacian() const { return dxx + dyy; }
};

/// Orthonormal Legendre basis of P_k(e) on an edge parameterized by arc
/// length from its smaller-coordinate end.
struct EdgeBasis {
  int k = 0;
  Eigen::Matrix2Xd points;
  Eigen::VectorXd weights;
  Eigen::MatrixXd value;  // points x (k+1)

  [[nodiscard]] int dim() const { return k + 1; }
};

[[nodiscard]] inline int cell_dim(int k) { return (k + 1) * (k + 1); }

CellBasis eval_cell_basis(int k, const Cell& cell, const Eigen::Matrix2Xd& points);

/// Basis tables at the q x q tensor Gauss points of the cell.
CellBasis cell_basis(int k, const Cell& cell, int q);

/// Basis tables at the q Gauss points of an axis-aligned segment from
/// `start` to `end`.
EdgeBasis edge_basis(int k, const Eigen::Vector2d& start, const Eigen::Vector2d& end, int q);

inline EdgeBasis edge_basis(int k, const Edge& edge, int q) {
  return edge_basis(k, edge.start, edge.end, q);
}

/// Segment occupied by one side of a cell, oriented like the mesh edge.
std::pair<Eigen::Vector2d, Eigen::Vector2d> side_segment(const Cell& cell, Side side);

/// Value of the Q_k(T) expansion with coefficients `coeffs` at (x, y).
double eval_cell_expansion(int k, const Cell& cell, const Eigen::VectorXd& coeffs, double x,
                           double y);

/// L2(T) projection onto Q_k(T): coefficients (fun, phi_i)_T.
Eigen::VectorXd project_cell(const ScalarField& fun, const Cell& cell, int k, int q);

/// L2(e) projection onto P_k(e).
Eigen::VectorXd project_edge(const ScalarField& fun, const Edge& edge, int k, int q);

/// Componentwise L2(e) projection onto [P_k(e)]^2; column c holds component c.
Eigen::MatrixX2d project_edge_vector(const VectorField& fun, const Edge& edge, int k, int q);

}  // namespace wg
