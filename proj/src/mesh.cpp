#include "wg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wg {

void MeshParams::validate() const {
  if (N < 4 || N % 4 != 0) {
    throw std::invalid_argument("mesh: N must be >= 4 and divisible by 4, got " +
                                std::to_string(N));
  }
  if (!(eps > 0)) throw std::invalid_argument("mesh: eps must be positive");
  if (!(alpha > 0)) throw std::invalid_argument("mesh: alpha must be positive");
  if (k < 3) throw std::invalid_argument("mesh: k must be >= 3");
}

std::size_t ShishkinMesh::boundary_edge_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [](const Edge& e) { return e.on_boundary; }));
}

double compute_lambda(int N, double eps, double alpha) {
  if (N < 4) throw std::invalid_argument("compute_lambda: N must be >= 4");
  if (!(eps > 0) || !(alpha > 0)) {
    throw std::invalid_argument("compute_lambda: eps and alpha must be positive");
  }
  return std::min(alpha * eps * std::log(static_cast<double>(N)), 0.25);
}

std::vector<double> build_axis_partition(int N, double lambda) {
  if (N < 4 || N % 4 != 0) {
    throw std::invalid_argument("build_axis_partition: N must be a positive multiple of 4");
  }
  if (!(lambda > 0) || lambda > 0.25) {
    throw std::invalid_argument("build_axis_partition: lambda must lie in (0, 1/4]");
  }
  const int quarter = N / 4;
  const double h = 4.0 * lambda / N;
  const double H = 2.0 * (1.0 - 2.0 * lambda) / N;

  std::vector<double> x(N + 1);
  // fill the lower half and mirror, so x[i] + x[N - i] == 1 exactly
  for (int i = 0; i <= N / 2; ++i) {
    x[i] = i < quarter ? i * h : lambda + (i - quarter) * H;
  }
  x[N / 2] = 0.5;
  for (int i = 0; i < N / 2; ++i) {
    x[N - i] = 1.0 - x[i];
  }
  return x;
}

ShishkinMesh build_mesh(const MeshParams& params) {
  params.validate();
  ShishkinMesh mesh;
  mesh.params = params;
  const int N = params.N;
  mesh.lambda = params.kind == MeshKind::uniform ? 0.25
                                                 : compute_lambda(N, params.eps, params.alpha);
  mesh.h_fine = 4.0 * mesh.lambda / N;
  mesh.H_coarse = 2.0 * (1.0 - 2.0 * mesh.lambda) / N;
  mesh.breakpoints = build_axis_partition(N, mesh.lambda);
  const auto& b = mesh.breakpoints;

  const int n_horizontal = N * (N + 1);
  mesh.edges.resize(static_cast<std::size_t>(2 * n_horizontal));
  for (int j = 0; j <= N; ++j) {
    for (int i = 0; i < N; ++i) {
      Edge& e = mesh.edges[mesh.horizontal_edge(i, j)];
      e.id = mesh.horizontal_edge(i, j);
      e.orientation = Orientation::horizontal;
      e.start = {b[i], b[j]};
      e.end = {b[i + 1], b[j]};
      // cells[0] lies below (against the canonical normal), cells[1] above
      e.cells = {j > 0 ? mesh.cell_index(i, j - 1) : -1, j < N ? mesh.cell_index(i, j) : -1};
      e.on_boundary = (j == 0 || j == N);
    }
  }
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j < N; ++j) {
      Edge& e = mesh.edges[mesh.vertical_edge(i, j)];
      e.id = mesh.vertical_edge(i, j);
      e.orientation = Orientation::vertical;
      e.start = {b[i], b[j]};
      e.end = {b[i], b[j + 1]};
      e.cells = {i > 0 ? mesh.cell_index(i - 1, j) : -1, i < N ? mesh.cell_index(i, j) : -1};
      e.on_boundary = (i == 0 || i == N);
    }
  }

  mesh.cells.resize(static_cast<std::size_t>(N) * N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      Cell& c = mesh.cells[mesh.cell_index(i, j)];
      c.i = i;
      c.j = j;
      c.x = {b[i], b[i + 1]};
      c.y = {b[j], b[j + 1]};
      c.edge_ids[static_cast<int>(Side::south)] = mesh.horizontal_edge(i, j);
      c.edge_ids[static_cast<int>(Side::north)] = mesh.horizontal_edge(i, j + 1);
      c.edge_ids[static_cast<int>(Side::west)] = mesh.vertical_edge(i, j);
      c.edge_ids[static_cast<int>(Side::east)] = mesh.vertical_edge(i + 1, j);
      c.normal_sign = {-1, +1, +1, -1};
    }
  }
  return mesh;
}

}  // namespace wg
