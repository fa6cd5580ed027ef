#include "wg/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "wg/legendre.hpp"

namespace wg {

namespace {

void check_degree(int k) {
  if (k < 0) throw std::invalid_argument("basis: degree must be nonnegative");
}

}  // namespace

CellBasis eval_cell_basis(int k, const Cell& cell, const Eigen::Matrix2Xd& points) {
  check_degree(k);
  const int n1 = k + 1;
  const auto np = points.cols();
  const double h1 = cell.h1();
  const double h2 = cell.h2();
  const double sx = 2.0 / h1;
  const double sy = 2.0 / h2;
  const double scale = std::sqrt(sx * sy);

  CellBasis basis;
  basis.k = k;
  basis.points = points;
  basis.value.resize(np, n1 * n1);
  basis.dx.resize(np, n1 * n1);
  basis.dy.resize(np, n1 * n1);
  basis.dxx.resize(np, n1 * n1);
  basis.dyy.resize(np, n1 * n1);

  for (Eigen::Index p = 0; p < np; ++p) {
    const double t1 = sx * (points(0, p) - cell.x.lo) - 1.0;
    const double t2 = sy * (points(1, p) - cell.y.lo) - 1.0;
    const auto lx = legendre_orthonormal(k, t1);
    const auto ly = legendre_orthonormal(k, t2);
    for (int m = 0; m < n1; ++m) {
      for (int n = 0; n < n1; ++n) {
        const int idx = m * n1 + n;
        basis.value(p, idx) = scale * lx(m, 0) * ly(n, 0);
        basis.dx(p, idx) = scale * sx * lx(m, 1) * ly(n, 0);
        basis.dy(p, idx) = scale * sy * lx(m, 0) * ly(n, 1);
        basis.dxx(p, idx) = scale * sx * sx * lx(m, 2) * ly(n, 0);
        basis.dyy(p, idx) = scale * sy * sy * lx(m, 0) * ly(n, 2);
      }
    }
  }
  return basis;
}

CellBasis cell_basis(int k, const Cell& cell, int q) {
  const auto rule = gauss_legendre(q);
  const double h1 = cell.h1();
  const double h2 = cell.h2();
  Eigen::Matrix2Xd points(2, q * q);
  Eigen::VectorXd weights(q * q);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const int p = a * q + b;
      points(0, p) = cell.x.lo + 0.5 * h1 * (rule.nodes[a] + 1.0);
      points(1, p) = cell.y.lo + 0.5 * h2 * (rule.nodes[b] + 1.0);
      weights[p] = 0.25 * h1 * h2 * rule.weights[a] * rule.weights[b];
    }
  }
  CellBasis basis = eval_cell_basis(k, cell, points);
  basis.weights = std::move(weights);
  return basis;
}

EdgeBasis edge_basis(int k, const Eigen::Vector2d& start, const Eigen::Vector2d& end, int q) {
  check_degree(k);
  const auto rule = gauss_legendre(q);
  const double len = (end - start).norm();
  const double scale = std::sqrt(2.0 / len);

  EdgeBasis basis;
  basis.k = k;
  basis.points.resize(2, q);
  basis.weights.resize(q);
  basis.value.resize(q, k + 1);
  for (int p = 0; p < q; ++p) {
    const double t = rule.nodes[p];
    basis.points.col(p) = start + 0.5 * (t + 1.0) * (end - start);
    basis.weights[p] = 0.5 * len * rule.weights[p];
    const auto l = legendre_orthonormal(k, t);
    basis.value.row(p) = scale * l.col(0).transpose();
  }
  return basis;
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> side_segment(const Cell& cell, Side side) {
  switch (side) {
    case Side::south:
      return {{cell.x.lo, cell.y.lo}, {cell.x.hi, cell.y.lo}};
    case Side::north:
      return {{cell.x.lo, cell.y.hi}, {cell.x.hi, cell.y.hi}};
    case Side::west:
      return {{cell.x.lo, cell.y.lo}, {cell.x.lo, cell.y.hi}};
    case Side::east:
      return {{cell.x.hi, cell.y.lo}, {cell.x.hi, cell.y.hi}};
  }
  throw std::logic_error("side_segment: invalid side");
}

double eval_cell_expansion(int k, const Cell& cell, const Eigen::VectorXd& coeffs, double x,
                           double y) {
  Eigen::Matrix2Xd pt(2, 1);
  pt << x, y;
  return (eval_cell_basis(k, cell, pt).value * coeffs)(0);
}

Eigen::VectorXd project_cell(const ScalarField& fun, const Cell& cell, int k, int q) {
  const CellBasis basis = cell_basis(k, cell, q);
  Eigen::VectorXd wf(basis.weights.size());
  for (Eigen::Index p = 0; p < wf.size(); ++p) {
    wf[p] = basis.weights[p] * fun(basis.points(0, p), basis.points(1, p));
  }
  return basis.value.transpose() * wf;
}

Eigen::VectorXd project_edge(const ScalarField& fun, const Edge& edge, int k, int q) {
  const EdgeBasis basis = edge_basis(k, edge, q);
  Eigen::VectorXd wf(q);
  for (int p = 0; p < q; ++p) {
    wf[p] = basis.weights[p] * fun(basis.points(0, p), basis.points(1, p));
  }
  return basis.value.transpose() * wf;
}

Eigen::MatrixX2d project_edge_vector(const VectorField& fun, const Edge& edge, int k, int q) {
  const EdgeBasis basis = edge_basis(k, edge, q);
  Eigen::MatrixX2d wf(q, 2);
  for (int p = 0; p < q; ++p) {
    wf.row(p) = basis.weights[p] * fun(basis.points(0, p), basis.points(1, p)).transpose();
  }
  return basis.value.transpose() * wf;
}

}  // namespace wg
