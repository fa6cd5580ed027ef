#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wg/analytic.hpp"
#include "wg/dof_map.hpp"
#include "wg/mesh.hpp"
#include "wg/solver.hpp"

namespace wg {

enum class CondenseMode { automatic, on, off };

CondenseMode condense_mode_from_string(const std::string& name);
MeshKind mesh_kind_from_string(const std::string& name);
std::string to_string(MeshKind kind);

/// Discrete energy norm sqrt(sum_T eps^2 |L v|^2 + |G v|^2 + v^T S v) of a
/// weak function given by its free coefficients (constrained entries are 0).
double triple_bar_norm(const Eigen::VectorXd& free_coeffs, const ShishkinMesh& mesh,
                       const DofMap& dofs, double eps, int q);

struct CaseConfig {
  Example example = Example::layer_sine;
  MeshKind mesh = MeshKind::shishkin;
  int k = 3;
  double eps = 1.0;
  int N = 8;
  std::optional<double> alpha;  // defaults to k + 1
  std::optional<int> quad;      // defaults to k + 3
  SolverMethod solver = SolverMethod::direct;
  CondenseMode condense = CondenseMode::automatic;
  double tol = 1e-12;

  [[nodiscard]] double alpha_or_default() const { return alpha.value_or(k + 1.0); }
  [[nodiscard]] int quad_or_default() const { return quad.value_or(default_quadrature(k)); }
  [[nodiscard]] bool condensed() const {
    return condense == CondenseMode::on || (condense == CondenseMode::automatic && N >= 64);
  }
  [[nodiscard]] std::string describe() const;
};

struct ConvergenceRecord {
  Example example = Example::layer_sine;
  MeshKind mesh = MeshKind::shishkin;
  int k = 3;
  double eps = 1.0;
  int N = 8;
  double error = 0;             // |||Q_N u - u_N|||
  std::optional<double> order;  // log2(error(N) / error(2N))
};

struct CaseResult {
  ConvergenceRecord record;
  SolveReport solve;
  double projection_norm = 0;  // |||Q_N u|||
  int free_dofs = 0;
  int solved_dofs = 0;  // unknowns in the linear solve
  Eigen::VectorXd solution;  // u_N over the free DOFs
};

/// Mesh, assembly, solve and error for one (example, mesh, k, eps, N).
/// Throws SolverError (with the case description) on solver failure.
CaseResult run_case(const CaseConfig& config);

/// log2(coarse / fine); 0 when the errors are equal.
double convergence_order(double error_coarse, double error_fine);

/// Fills `order` for each record that has a 2N partner with the same
/// example, mesh, k and eps.
void assign_orders(std::vector<ConvergenceRecord>& records);

struct RunConfig {
  Example example = Example::layer_sine;
  MeshKind mesh = MeshKind::shishkin;
  int k = 3;
  std::vector<double> eps{1.0};
  std::vector<int> N{8, 16, 32, 64, 128};
  std::optional<double> alpha;
  std::optional<int> quad;
  SolverMethod solver = SolverMethod::direct;
  CondenseMode condense = CondenseMode::automatic;
  int jobs = 1;
  double tol = 1e-12;

  void validate() const;
  [[nodiscard]] std::vector<CaseConfig> cases() const;
};

/// Gauss points per direction used by the table presets.
inline constexpr int kTableQuadrature = 5;

/// The six result tables: 1-3 use u = g(x) g(y), 4-6 use u = g(x) p(y);
/// tables 1/4 are Shishkin k=3, 2/5 uniform k=3, 3/6 Shishkin k=4.
RunConfig table_preset(int table);

using ProgressCallback = std::function<void(const CaseResult&)>;

/// Runs every case (concurrently when jobs > 1), sorted by (eps desc, N asc),
/// with orders assigned.
std::vector<ConvergenceRecord> convergence_table(const RunConfig& config,
                                                 const ProgressCallback& progress = {});

/// CSV with header example,mesh,k,eps,N,error,order,error_full.
void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);

}  // namespace wg
