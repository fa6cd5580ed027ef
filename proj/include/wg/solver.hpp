#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "wg/assembly.hpp"

namespace wg {

enum class SolverMethod { direct, pcg };

SolverMethod solver_method_from_string(const std::string& name);
std::string to_string(SolverMethod method);

struct SolveReport {
  SolverMethod method = SolverMethod::direct;
  std::string backend;  // factorization or iteration actually used
  int iterations = 0;    // CG iterations, or refinement steps after a direct solve
  double relative_residual = 0;  // ||b - A x|| / ||b||, recomputed after the solve
  double seconds = 0;
};

struct SolveResult {
  Eigen::VectorXd solution;
  SolveReport report;
};

/// Thrown on factorization breakdown or PCG non-convergence.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves A x = b for symmetric positive definite A (both triangles stored).
///
/// `direct` uses a sparse Cholesky factorization with a fill-reducing
/// ordering (CHOLMOD supernodal when available, Eigen's simplicial LLT
/// otherwise or if the former breaks down), followed by up to three steps
/// of iterative refinement toward tol. `pcg` runs Jacobi-preconditioned conjugate gradients until
/// ||r|| / ||b|| <= tol, with at most 20 * dim iterations.
SolveResult solve_spd(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                      SolverMethod method = SolverMethod::direct, double tol = 1e-12);

}  // namespace wg
