#pragma once

#include <vector>

#include <Eigen/Core>

#include "wg/mesh.hpp"
#include "wg/weak_ops.hpp"

namespace wg {

/// Global numbering of the weak function space.
///
/// Raw numbering: all interior coefficients (cell by cell), then all trace
/// coefficients (edge by edge), then all x-gradient and finally all
/// y-gradient coefficients. On boundary edges the trace and the normal
/// gradient component are constrained to zero; free DOFs keep the raw order.
class DofMap {
 public:
  DofMap(const ShishkinMesh& mesh, int k);

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int n_cells() const { return n_cells_; }
  [[nodiscard]] int n_edges() const { return n_edges_; }
  [[nodiscard]] int n_interior_per_cell() const { return (k_ + 1) * (k_ + 1); }
  [[nodiscard]] int n_per_edge() const { return k_ + 1; }

  [[nodiscard]] int n_raw() const { return static_cast<int>(free_index_.size()); }
  [[nodiscard]] int n_free() const { return static_cast<int>(raw_index_.size()); }
  [[nodiscard]] int n_constrained() const { return n_raw() - n_free(); }
  /// Interior DOFs are never constrained and come first in both numberings.
  [[nodiscard]] int n_interior_total() const { return n_cells_ * n_interior_per_cell(); }

  [[nodiscard]] int interior(int cell, int a) const { return cell * n_interior_per_cell() + a; }
  [[nodiscard]] int trace(int edge, int a) const { return trace_offset_ + edge * (k_ + 1) + a; }
  /// Gradient component c (0 = x, 1 = y).
  [[nodiscard]] int gradient(int edge, int c, int a) const {
    return (c == 0 ? gx_offset_ : gy_offset_) + edge * (k_ + 1) + a;
  }

  [[nodiscard]] bool constrained(int raw) const { return free_index_[raw] < 0; }
  /// -1 for constrained DOFs.
  [[nodiscard]] int free_index(int raw) const { return free_index_[raw]; }
  [[nodiscard]] int raw_index(int free) const { return raw_index_[free]; }

  /// Raw indices of the local DOFs of a cell, in LocalDofLayout order.
  [[nodiscard]] std::vector<int> cell_dofs(const ShishkinMesh& mesh, int cell) const;

  [[nodiscard]] Eigen::VectorXd to_free(const Eigen::VectorXd& raw) const;
  /// Constrained entries become zero.
  [[nodiscard]] Eigen::VectorXd to_raw(const Eigen::VectorXd& free) const;

 private:
  int k_;
  int n_cells_;
  int n_edges_;
  int trace_offset_;
  int gx_offset_;
  int gy_offset_;
  std::vector<int> free_index_;
  std::vector<int> raw_index_;
};

inline DofMap build_dof_map(const ShishkinMesh& mesh, int k) { return DofMap(mesh, k); }

}  // namespace wg
