#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace wg {

enum class MeshKind { shishkin, uniform };

struct MeshParams {
  int N = 8;            // cells per axis, multiple of 4
  double eps = 1.0;     // perturbation parameter
  int k = 3;            // polynomial degree
  double alpha = 4.0;   // transition constant, conventionally k + 1
  MeshKind kind = MeshKind::shishkin;

  /// Parameters with alpha = k + 1.
  static MeshParams with_default_alpha(int N, double eps, int k,
                                       MeshKind kind = MeshKind::shishkin) {
    return {N, eps, k, static_cast<double>(k + 1), kind};
  }

  void validate() const;
};

enum class Side { south = 0, east = 1, north = 2, west = 3 };
inline constexpr std::array<Side, 4> kSides{Side::south, Side::east, Side::north,
                                            Side::west};

enum class Orientation { horizontal, vertical };

struct Interval {
  double lo = 0;
  double hi = 0;
  [[nodiscard]] double length() const { return hi - lo; }
};

struct Cell {
  int i = 0;  // x index
  int j = 0;  // y index
  Interval x;
  Interval y;
  std::array<int, 4> edge_ids{};  // indexed by Side
  std::array<int, 4> normal_sign{};  // outward normal relative to edge canonical normal

  [[nodiscard]] double h1() const { return x.length(); }
  [[nodiscard]] double h2() const { return y.length(); }
  [[nodiscard]] double area() const { return h1() * h2(); }
};

struct Edge {
  int id = 0;
  Orientation orientation = Orientation::horizontal;
  Eigen::Vector2d start;  // smaller coordinate end
  Eigen::Vector2d end;
  std::array<int, 2> cells{-1, -1};  // -1 marks a missing neighbour
  bool on_boundary = false;

  [[nodiscard]] double length() const { return (end - start).norm(); }
  /// +e_x for vertical edges, +e_y for horizontal ones.
  [[nodiscard]] Eigen::Vector2d canonical_normal() const {
    return orientation == Orientation::vertical ? Eigen::Vector2d(1, 0)
                                                : Eigen::Vector2d(0, 1);
  }
  [[nodiscard]] int neighbor_count() const { return (cells[0] >= 0) + (cells[1] >= 0); }
};

/// Tensor-product layer-adapted mesh of the unit square.
///
/// Cells are ordered lexicographically by (i, j), i.e. index = i * N + j.
/// Horizontal edges come first, row by row (id = j * N + i for the edge on
/// y = y_j spanning [x_i, x_{i+1}]); vertical edges follow column by column
/// (id = N (N + 1) + i * N + j for the edge on x = x_i spanning [y_j, y_{j+1}]).
struct ShishkinMesh {
  MeshParams params;
  std::vector<double> breakpoints;
  double lambda = 0.25;
  double h_fine = 0;
  double H_coarse = 0;
  std::vector<Cell> cells;
  std::vector<Edge> edges;

  [[nodiscard]] int N() const { return params.N; }
  [[nodiscard]] int cell_index(int i, int j) const { return i * params.N + j; }
  [[nodiscard]] int horizontal_edge(int i, int j) const { return j * params.N + i; }
  [[nodiscard]] int vertical_edge(int i, int j) const {
    return params.N * (params.N + 1) + i * params.N + j;
  }
  [[nodiscard]] std::size_t boundary_edge_count() const;
};

/// Transition point min(alpha * eps * ln N, 1/4).
double compute_lambda(int N, double eps, double alpha);

/// N + 1 breakpoints: N/4 cells on [0, lambda], N/2 on [lambda, 1 - lambda],
/// N/4 on [1 - lambda, 1].
std::vector<double> build_axis_partition(int N, double lambda);

ShishkinMesh build_mesh(const MeshParams& params);

}  // namespace wg
