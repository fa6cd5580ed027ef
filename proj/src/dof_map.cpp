#include "wg/dof_map.hpp"

#include <stdexcept>

namespace wg {

DofMap::DofMap(const ShishkinMesh& mesh, int k)
    : k_(k),
      n_cells_(static_cast<int>(mesh.cells.size())),
      n_edges_(static_cast<int>(mesh.edges.size())) {
  if (k < 0) throw std::invalid_argument("DofMap: negative degree");
  const int ne = k + 1;
  trace_offset_ = n_cells_ * n_interior_per_cell();
  gx_offset_ = trace_offset_ + n_edges_ * ne;
  gy_offset_ = gx_offset_ + n_edges_ * ne;
  const int n_raw = gy_offset_ + n_edges_ * ne;

  std::vector<bool> fixed(n_raw, false);
  for (const Edge& e : mesh.edges) {
    if (!e.on_boundary) continue;
    const int normal = e.orientation == Orientation::vertical ? 0 : 1;
    for (int a = 0; a < ne; ++a) {
      fixed[trace(e.id, a)] = true;
      fixed[gradient(e.id, normal, a)] = true;
    }
  }
  free_index_.assign(n_raw, -1);
  raw_index_.reserve(n_raw);
  for (int r = 0; r < n_raw; ++r) {
    if (fixed[r]) continue;
    free_index_[r] = static_cast<int>(raw_index_.size());
    raw_index_.push_back(r);
  }
}

std::vector<int> DofMap::cell_dofs(const ShishkinMesh& mesh, int cell) const {
  const LocalDofLayout layout{k_};
  std::vector<int> dofs(layout.size());
  for (int a = 0; a < n_interior_per_cell(); ++a) dofs[a] = interior(cell, a);
  const Cell& c = mesh.cells[cell];
  for (Side s : kSides) {
    const int e = c.edge_ids[static_cast<int>(s)];
    for (int a = 0; a <= k_; ++a) {
      dofs[layout.trace(s) + a] = trace(e, a);
      dofs[layout.gradient(s, 0) + a] = gradient(e, 0, a);
      dofs[layout.gradient(s, 1) + a] = gradient(e, 1, a);
    }
  }
  return dofs;
}

Eigen::VectorXd DofMap::to_free(const Eigen::VectorXd& raw) const {
  if (raw.size() != n_raw()) throw std::invalid_argument("DofMap::to_free: size mismatch");
  Eigen::VectorXd out(n_free());
  for (int f = 0; f < n_free(); ++f) out[f] = raw[raw_index_[f]];
  return out;
}

Eigen::VectorXd DofMap::to_raw(const Eigen::VectorXd& free) const {
  if (free.size() != n_free()) throw std::invalid_argument("DofMap::to_raw: size mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_raw());
  for (int f = 0; f < n_free(); ++f) out[raw_index_[f]] = free[f];
  return out;
}

}  // namespace wg
