#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "wg/basis.hpp"
#include "wg/dof_map.hpp"
#include "wg/mesh.hpp"
#include "wg/weak_ops.hpp"

namespace wg {

using SparseMatrix = Eigen::SparseMatrix<double>;  // column major, both triangles stored

struct SparseSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  /// The leading n_blocks * block_size unknowns form a block-diagonal group
  /// coupled to nothing but the trailing unknowns (cell interiors).
  int n_blocks = 0;
  int block_size = 0;

  [[nodiscard]] int size() const { return static_cast<int>(rhs.size()); }
};

/// Interior block of a statically condensed system, kept for back-substitution.
struct InteriorBlock {
  std::shared_ptr<const Eigen::LLT<Eigen::MatrixXd>> factor;
  std::shared_ptr<const Eigen::MatrixXd> coupling;  // block rows x coupled columns
  std::vector<int> columns;  // condensed index of each coupled column, -1 if dropped
  Eigen::VectorXd rhs;
};

struct CondensedSystem {
  SparseSystem edge_system;
  std::vector<InteriorBlock> blocks;
  int block_size = 0;

  /// Full solution (interior unknowns first) from the condensed solution.
  [[nodiscard]] Eigen::VectorXd recover(const Eigen::VectorXd& edge_solution) const;
};

/// Local operators for each distinct cell shape. Cells whose widths agree to
/// about 12 digits share one entry.
class LocalOperatorCache {
 public:
  LocalOperatorCache(int k, double eps, double h, double H, int q)
      : k_(k), eps_(eps), h_(h), H_(H), q_(q) {}

  const LocalOperators& get(const Cell& cell);
  [[nodiscard]] std::size_t size() const { return cache_.size(); }
  [[nodiscard]] int k() const { return k_; }

 private:
  int k_;
  double eps_, h_, H_;
  int q_;
  std::map<std::pair<long long, long long>, std::unique_ptr<LocalOperators>> cache_;
};

/// Load vector restricted to one cell: (f, phi_i)_T for the interior basis.
Eigen::VectorXd cell_load(const ScalarField& forcing, const Cell& cell, int k, int q);

/// Global system over the free DOFs.
SparseSystem assemble_system(const ShishkinMesh& mesh, const DofMap& dofs, double eps,
                             const ScalarField& forcing, int q);

/// Eliminates the leading block-diagonal interior unknowns of an assembled
/// system by exact Schur complement.
CondensedSystem condense_interior(const SparseSystem& system);

/// Same result as condense_interior(assemble_system(...)), computed cell by
/// cell without forming the full matrix.
CondensedSystem assemble_condensed_system(const ShishkinMesh& mesh, const DofMap& dofs,
                                          double eps, const ScalarField& forcing, int q);

/// Matrix Market coordinate dump of the lower triangle.
void write_matrix_market(std::ostream& out, const SparseMatrix& matrix);
void write_matrix_market(const std::string& path, const SparseMatrix& matrix);

}  // namespace wg
