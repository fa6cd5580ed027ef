#include "wg/weak_ops.hpp"

#include <array>

namespace wg {

namespace {

// Cell basis traces and edge basis values at the Gauss points of one side.
struct SideTables {
  Side side;
  int axis;     // coordinate index of the outward normal
  double sign;  // outward normal = sign * e_axis
  CellBasis trace;
  EdgeBasis edge;
};

std::array<SideTables, 4> side_tables(const Cell& cell, int k, int q) {
  std::array<SideTables, 4> out;
  for (Side s : kSides) {
    const auto [start, end] = side_segment(cell, s);
    SideTables& t = out[static_cast<int>(s)];
    t.side = s;
    t.axis = (s == Side::east || s == Side::west) ? 0 : 1;
    t.sign = cell.normal_sign[static_cast<int>(s)];
    t.edge = edge_basis(k, start, end, q);
    t.trace = eval_cell_basis(k, cell, t.edge.points);
  }
  return out;
}

const Eigen::MatrixXd& derivative(const CellBasis& b, int axis) {
  return axis == 0 ? b.dx : b.dy;
}

}  // namespace

StabilizerWeights StabilizerWeights::from_widths(double eps, double h, double H) {
  const double r = eps / h;
  return {eps * r, r * r / H + 1.0 / H};
}

Eigen::MatrixXd weak_laplacian_matrix(const Cell& cell, int k, int q) {
  const LocalDofLayout layout{k};
  const int ni = layout.n_interior();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(ni, layout.size());

  // (v0, Laplacian phi_m)_T
  const CellBasis vol = cell_basis(k, cell, q);
  L.leftCols(ni) = vol.laplacian().transpose() * vol.weights.asDiagonal() * vol.value;

  for (const SideTables& t : side_tables(cell, k, q)) {
    const Eigen::MatrixXd wpsi = t.edge.weights.asDiagonal() * t.edge.value;
    // -<v_b, grad phi_m . n>
    L.middleCols(layout.trace(t.side), layout.n_edge()) =
        -t.sign * derivative(t.trace, t.axis).transpose() * wpsi;
    // <v_g . n, phi_m>; only the normal component of v_g contributes
    L.middleCols(layout.gradient(t.side, t.axis), layout.n_edge()) =
        t.sign * t.trace.value.transpose() * wpsi;
  }
  return L;
}

Eigen::MatrixXd weak_gradient_matrix(const Cell& cell, int k, int q) {
  const LocalDofLayout layout{k};
  const int ni = layout.n_interior();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * ni, layout.size());

  const CellBasis vol = cell_basis(k, cell, q);
  const Eigen::MatrixXd wv = vol.weights.asDiagonal() * vol.value;
  // -(v0, div q) with q = phi_m e_c
  G.block(0, 0, ni, ni) = -vol.dx.transpose() * wv;
  G.block(ni, 0, ni, ni) = -vol.dy.transpose() * wv;

  for (const SideTables& t : side_tables(cell, k, q)) {
    // <v_b, q . n> with q = phi_m e_axis
    G.block(t.axis * ni, layout.trace(t.side), ni, layout.n_edge()) =
        t.sign * t.trace.value.transpose() * t.edge.weights.asDiagonal() * t.edge.value;
  }
  return G;
}

Eigen::MatrixXd stabilizer_matrix(const Cell& cell, int k, double eps, double h, double H,
                                  int q) {
  const LocalDofLayout layout{k};
  const int ni = layout.n_interior();
  const int ne = layout.n_edge();
  const int n = layout.size();
  const StabilizerWeights sw = StabilizerWeights::from_widths(eps, h, H);

  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (const SideTables& t : side_tables(cell, k, q)) {
    const int nq = static_cast<int>(t.edge.weights.size());
    // rows: pointwise v0 - v_b, and the two components of grad v0 - v_g
    Eigen::MatrixXd jump = Eigen::MatrixXd::Zero(nq, n);
    Eigen::MatrixXd gx = Eigen::MatrixXd::Zero(nq, n);
    Eigen::MatrixXd gy = Eigen::MatrixXd::Zero(nq, n);
    jump.leftCols(ni) = t.trace.value;
    jump.middleCols(layout.trace(t.side), ne) = -t.edge.value;
    gx.leftCols(ni) = t.trace.dx;
    gx.middleCols(layout.gradient(t.side, 0), ne) = -t.edge.value;
    gy.leftCols(ni) = t.trace.dy;
    gy.middleCols(layout.gradient(t.side, 1), ne) = -t.edge.value;

    const auto w = t.edge.weights.asDiagonal();
    S.noalias() += sw.trace * (jump.transpose() * w * jump);
    S.noalias() += sw.gradient * (gx.transpose() * w * gx + gy.transpose() * w * gy);
  }
  return 0.5 * (S + S.transpose());
}

LocalOperators local_operators(const Cell& cell, int k, double eps, double h, double H, int q) {
  LocalOperators ops;
  ops.L = weak_laplacian_matrix(cell, k, q);
  ops.G = weak_gradient_matrix(cell, k, q);
  ops.S = stabilizer_matrix(cell, k, eps, h, H, q);
  Eigen::MatrixXd A = (eps * eps) * (ops.L.transpose() * ops.L);
  A.noalias() += ops.G.transpose() * ops.G;
  A += ops.S;
  ops.A = 0.5 * (A + A.transpose());
  return ops;
}

Eigen::MatrixXd local_stiffness(const Cell& cell, int k, double eps, double h, double H, int q) {
  return local_operators(cell, k, eps, h, H, q).A;
}

}  // namespace wg
