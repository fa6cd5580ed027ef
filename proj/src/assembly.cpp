#include "wg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace wg {

namespace {

using ElementIndices = std::vector<std::vector<int>>;

std::pair<long long, long long> shape_key(const Cell& cell) {
  auto q = [](double w) { return std::llround(std::log(w) * 1e12); };
  return {q(cell.h1()), q(cell.h2())};
}

// CSC pattern of sum_e (idx_e x idx_e); negative indices are skipped.
SparseMatrix symbolic_pattern(int n, const ElementIndices& elements) {
  std::vector<int> count(n + 1, 0);
  for (const auto& idx : elements) {
    for (int i : idx) {
      if (i >= 0) ++count[i + 1];
    }
  }
  for (int i = 0; i < n; ++i) count[i + 1] += count[i];
  std::vector<int> owners(count[n]);
  {
    std::vector<int> fill(count.begin(), count.end() - 1);
    for (int e = 0; e < static_cast<int>(elements.size()); ++e) {
      for (int i : elements[e]) {
        if (i >= 0) owners[fill[i]++] = e;
      }
    }
  }

  std::vector<int> outer(n + 1, 0);
  std::vector<int> inner;
  std::vector<int> rows;
  for (int j = 0; j < n; ++j) {
    rows.clear();
    for (int p = count[j]; p < count[j + 1]; ++p) {
      for (int i : elements[owners[p]]) {
        if (i >= 0) rows.push_back(i);
      }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    inner.insert(inner.end(), rows.begin(), rows.end());
    outer[j + 1] = static_cast<int>(inner.size());
  }

  SparseMatrix m(n, n);
  m.resizeNonZeros(static_cast<Eigen::Index>(inner.size()));
  std::copy(outer.begin(), outer.end(), m.outerIndexPtr());
  std::copy(inner.begin(), inner.end(), m.innerIndexPtr());
  std::fill(m.valuePtr(), m.valuePtr() + inner.size(), 0.0);
  return m;
}

void scatter_add(SparseMatrix& m, const std::vector<int>& idx, const Eigen::MatrixXd& local) {
  const int* outer = m.outerIndexPtr();
  const int* inner = m.innerIndexPtr();
  double* values = m.valuePtr();
  const int n = static_cast<int>(idx.size());
  for (int b = 0; b < n; ++b) {
    const int j = idx[b];
    if (j < 0) continue;
    const int* first = inner + outer[j];
    const int* last = inner + outer[j + 1];
    for (int a = 0; a < n; ++a) {
      const int i = idx[a];
      if (i < 0) continue;
      const int* pos = std::lower_bound(first, last, i);
      values[pos - inner] += local(a, b);
    }
  }
}

// free index of each local DOF of a cell (-1 when constrained)
std::vector<int> free_cell_dofs(const ShishkinMesh& mesh, const DofMap& dofs, int cell) {
  std::vector<int> idx = dofs.cell_dofs(mesh, cell);
  for (int& i : idx) i = dofs.free_index(i);
  return idx;
}

struct CellCondensation {
  std::shared_ptr<const Eigen::LLT<Eigen::MatrixXd>> factor;
  std::shared_ptr<const Eigen::MatrixXd> coupling;  // A_IE
  Eigen::MatrixXd schur;                            // A_EE - A_EI A_II^{-1} A_IE
};

CellCondensation condense_local(const Eigen::MatrixXd& A, int ni) {
  const int ne = static_cast<int>(A.rows()) - ni;
  auto factor = std::make_shared<Eigen::LLT<Eigen::MatrixXd>>(A.topLeftCorner(ni, ni));
  if (factor->info() != Eigen::Success) {
    throw std::runtime_error("condensation: interior block is not positive definite");
  }
  auto coupling = std::make_shared<Eigen::MatrixXd>(A.topRightCorner(ni, ne));
  const Eigen::MatrixXd X = factor->solve(*coupling);
  Eigen::MatrixXd schur = A.bottomRightCorner(ne, ne) - coupling->transpose() * X;
  schur = 0.5 * (schur + schur.transpose()).eval();
  return {std::move(factor), std::move(coupling), std::move(schur)};
}

}  // namespace

const LocalOperators& LocalOperatorCache::get(const Cell& cell) {
  auto& slot = cache_[shape_key(cell)];
  if (!slot) {
    slot = std::make_unique<LocalOperators>(local_operators(cell, k_, eps_, h_, H_, q_));
  }
  return *slot;
}

Eigen::VectorXd cell_load(const ScalarField& forcing, const Cell& cell, int k, int q) {
  return project_cell(forcing, cell, k, q);
}

SparseSystem assemble_system(const ShishkinMesh& mesh, const DofMap& dofs, double eps,
                             const ScalarField& forcing, int q) {
  const int k = dofs.k();
  const int n_cells = static_cast<int>(mesh.cells.size());
  LocalOperatorCache ops(k, eps, mesh.h_fine, mesh.H_coarse, q);

  ElementIndices elements(n_cells);
  for (int c = 0; c < n_cells; ++c) elements[c] = free_cell_dofs(mesh, dofs, c);

  SparseSystem sys;
  sys.matrix = symbolic_pattern(dofs.n_free(), elements);
  sys.rhs = Eigen::VectorXd::Zero(dofs.n_free());
  sys.n_blocks = n_cells;
  sys.block_size = dofs.n_interior_per_cell();
  for (int c = 0; c < n_cells; ++c) {
    const Cell& cell = mesh.cells[c];
    scatter_add(sys.matrix, elements[c], ops.get(cell).A);
    const Eigen::VectorXd load = cell_load(forcing, cell, k, q);
    for (int a = 0; a < load.size(); ++a) sys.rhs[elements[c][a]] += load[a];
  }
  return sys;
}

Eigen::VectorXd CondensedSystem::recover(const Eigen::VectorXd& edge_solution) const {
  const int n_int = static_cast<int>(blocks.size()) * block_size;
  Eigen::VectorXd full(n_int + edge_solution.size());
  full.tail(edge_solution.size()) = edge_solution;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const InteriorBlock& blk = blocks[b];
    Eigen::VectorXd coupled(blk.columns.size());
    for (std::size_t i = 0; i < blk.columns.size(); ++i) {
      coupled[i] = blk.columns[i] >= 0 ? edge_solution[blk.columns[i]] : 0.0;
    }
    full.segment(static_cast<Eigen::Index>(b) * block_size, block_size) =
        blk.factor->solve(blk.rhs - *blk.coupling * coupled);
  }
  return full;
}

CondensedSystem condense_interior(const SparseSystem& system) {
  const int B = system.block_size;
  const int n_int = system.n_blocks * B;
  const int n = system.size();
  const int n_edge = n - n_int;
  const SparseMatrix& A = system.matrix;

  CondensedSystem out;
  out.block_size = B;
  out.blocks.resize(system.n_blocks);
  Eigen::VectorXd edge_rhs = system.rhs.tail(n_edge);
  ElementIndices elements(system.n_blocks);
  std::vector<Eigen::MatrixXd> schur(system.n_blocks);

  for (int b = 0; b < system.n_blocks; ++b) {
    const int r0 = b * B;
    std::vector<int> cols;
    Eigen::MatrixXd Aii = Eigen::MatrixXd::Zero(B, B);
    for (int a = 0; a < B; ++a) {
      for (SparseMatrix::InnerIterator it(A, r0 + a); it; ++it) {
        const int i = static_cast<int>(it.row());
        if (i >= n_int) {
          cols.push_back(i - n_int);
        } else if (i >= r0 && i < r0 + B) {
          Aii(i - r0, a) = it.value();
        } else if (it.value() != 0.0) {
          throw std::invalid_argument("condense_interior: interior unknowns are not block diagonal");
        }
      }
    }
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    const int m = static_cast<int>(cols.size());

    Eigen::MatrixXd Aie = Eigen::MatrixXd::Zero(B, m);
    for (int a = 0; a < B; ++a) {
      for (SparseMatrix::InnerIterator it(A, r0 + a); it; ++it) {
        const int i = static_cast<int>(it.row());
        if (i < n_int) continue;
        const auto pos = std::lower_bound(cols.begin(), cols.end(), i - n_int) - cols.begin();
        Aie(a, pos) = it.value();  // symmetric storage: column r0+a equals row r0+a
      }
    }

    auto factor = std::make_shared<Eigen::LLT<Eigen::MatrixXd>>(Aii);
    if (factor->info() != Eigen::Success) {
      throw std::runtime_error("condense_interior: singular interior block " + std::to_string(b));
    }
    const Eigen::MatrixXd X = factor->solve(Aie);
    Eigen::MatrixXd s = -(Aie.transpose() * X);
    schur[b] = 0.5 * (s + s.transpose());
    const Eigen::VectorXd rhs_i = system.rhs.segment(r0, B);
    const Eigen::VectorXd y = factor->solve(rhs_i);
    for (int c = 0; c < m; ++c) edge_rhs[cols[c]] -= Aie.col(c).dot(y);

    InteriorBlock& blk = out.blocks[b];
    blk.factor = std::move(factor);
    blk.coupling = std::make_shared<const Eigen::MatrixXd>(std::move(Aie));
    blk.columns = cols;
    blk.rhs = rhs_i;
    elements[b] = std::move(cols);
  }

  SparseMatrix contributions = symbolic_pattern(n_edge, elements);
  for (int b = 0; b < system.n_blocks; ++b) scatter_add(contributions, elements[b], schur[b]);
  out.edge_system.matrix = SparseMatrix(A.bottomRightCorner(n_edge, n_edge)) + contributions;
  out.edge_system.matrix.makeCompressed();
  out.edge_system.rhs = std::move(edge_rhs);
  return out;
}

CondensedSystem assemble_condensed_system(const ShishkinMesh& mesh, const DofMap& dofs,
                                          double eps, const ScalarField& forcing, int q) {
  const int k = dofs.k();
  const int ni = dofs.n_interior_per_cell();
  const int n_cells = static_cast<int>(mesh.cells.size());
  const int n_int = dofs.n_interior_total();
  const int n_edge = dofs.n_free() - n_int;
  LocalOperatorCache ops(k, eps, mesh.h_fine, mesh.H_coarse, q);
  std::map<std::pair<long long, long long>, CellCondensation> condensed;

  CondensedSystem out;
  out.block_size = ni;
  out.blocks.resize(n_cells);
  ElementIndices elements(n_cells);
  for (int c = 0; c < n_cells; ++c) {
    std::vector<int> idx = free_cell_dofs(mesh, dofs, c);
    std::vector<int> edge_idx(idx.begin() + ni, idx.end());
    for (int& i : edge_idx) i = i >= 0 ? i - n_int : -1;
    elements[c] = std::move(edge_idx);
  }

  SparseSystem& sys = out.edge_system;
  sys.matrix = symbolic_pattern(n_edge, elements);
  sys.rhs = Eigen::VectorXd::Zero(n_edge);
  for (int c = 0; c < n_cells; ++c) {
    const Cell& cell = mesh.cells[c];
    const auto key = shape_key(cell);
    auto it = condensed.find(key);
    if (it == condensed.end()) {
      it = condensed.emplace(key, condense_local(ops.get(cell).A, ni)).first;
    }
    const CellCondensation& cc = it->second;
    scatter_add(sys.matrix, elements[c], cc.schur);

    const Eigen::VectorXd load = cell_load(forcing, cell, k, q);
    const Eigen::VectorXd rhs_e = -(cc.coupling->transpose() * cc.factor->solve(load));
    for (std::size_t a = 0; a < elements[c].size(); ++a) {
      if (elements[c][a] >= 0) sys.rhs[elements[c][a]] += rhs_e[static_cast<Eigen::Index>(a)];
    }

    InteriorBlock& blk = out.blocks[c];
    blk.factor = cc.factor;
    blk.coupling = cc.coupling;
    blk.columns = elements[c];
    blk.rhs = load;
  }
  return out;
}

void write_matrix_market(std::ostream& out, const SparseMatrix& matrix) {
  Eigen::Index nnz = 0;
  for (int j = 0; j < matrix.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(matrix, j); it; ++it) {
      if (it.row() >= it.col()) ++nnz;
    }
  }
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << matrix.rows() << ' ' << matrix.cols() << ' ' << nnz << '\n';
  out << std::setprecision(17);
  for (int j = 0; j < matrix.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(matrix, j); it; ++it) {
      if (it.row() >= it.col()) {
        out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
      }
    }
  }
}

void write_matrix_market(const std::string& path, const SparseMatrix& matrix) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);
  write_matrix_market(file, matrix);
}

}  // namespace wg
