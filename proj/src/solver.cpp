#include "wg/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <Eigen/SparseCholesky>
#ifdef WG_HAVE_CHOLMOD
#include <Eigen/CholmodSupport>
#endif

namespace wg {

namespace {

double relative_residual(const SparseMatrix& A, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& b) {
  const double bnorm = b.norm();
  const double rnorm = (b - A * x).norm();
  return bnorm > 0 ? rnorm / bnorm : rnorm;
}

// Factors A, solves, then refines x += A^-1 (b - A x) while the residual
// keeps dropping and is above tol. Returns false if the factorization
// breaks down or the result is not a plausible solution.
template <typename Factorization>
bool factor_and_solve(Factorization& chol, const SparseMatrix& A, const Eigen::VectorXd& b,
                      double tol, Eigen::VectorXd& x, int& refinements) {
  chol.compute(A);
  if (chol.info() != Eigen::Success) return false;
  x = chol.solve(b);
  if (chol.info() != Eigen::Success || !x.allFinite()) return false;
  double res = relative_residual(A, x, b);
  // a correct Cholesky solve is far better than this even for cond ~ 1e12
  if (!(res < 1e-4)) return false;
  refinements = 0;
  while (res > tol && refinements < 3) {
    const Eigen::VectorXd dx = chol.solve(b - A * x);
    const Eigen::VectorXd cand = x + dx;
    const double cand_res = relative_residual(A, cand, b);
    if (!(cand_res < res)) break;
    x = cand;
    res = cand_res;
    ++refinements;
  }
  return true;
}

Eigen::VectorXd direct_solve(const SparseMatrix& A, const Eigen::VectorXd& b, double tol,
                             std::string& backend, int& refinements) {
  Eigen::VectorXd x;
#ifdef WG_HAVE_CHOLMOD
  {
    // The supernodal kernels go through the system BLAS. Some BLAS builds
    // miscompute on some CPUs; that shows up as a spurious breakdown here
    // and the simplicial factorization below takes over.
    Eigen::CholmodSupernodalLLT<SparseMatrix, Eigen::Lower> chol;
    chol.cholmod().print = 0;
    if (factor_and_solve(chol, A, b, tol, x, refinements)) {
      backend = "cholmod-supernodal";
      return x;
    }
  }
#endif
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower> chol;
  if (!factor_and_solve(chol, A, b, tol, x, refinements)) {
    throw SolverError("sparse Cholesky factorization failed: matrix is not positive definite");
  }
  backend = "eigen-simplicial";
  return x;
}

// Jacobi-preconditioned CG. Convergence of the recursive residual is
// confirmed against the true residual; on disagreement the iteration
// restarts from the true residual. If restarts stop reducing the true
// residual it has hit its rounding floor and tol cannot be met.
Eigen::VectorXd pcg_solve(const SparseMatrix& A, const Eigen::VectorXd& b, double tol,
                          int& iterations) {
  const Eigen::Index n = b.size();
  const double bnorm = b.norm();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  iterations = 0;
  if (bnorm == 0) return x;

  const Eigen::VectorXd diag = A.diagonal();
  if ((diag.array() <= 0).any()) {
    throw SolverError("pcg: matrix has a nonpositive diagonal entry");
  }
  const Eigen::VectorXd inv_diag = diag.cwiseInverse();
  const long long cap = 20LL * n;
  auto cap_error = [&] {
    return SolverError("pcg: no convergence within " + std::to_string(cap) + " iterations");
  };

  Eigen::VectorXd r = b;
  double best = std::numeric_limits<double>::infinity();
  int stalled = 0;
  while (true) {
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    while (r.norm() > tol * bnorm) {
      if (iterations >= cap) throw cap_error();
      const Eigen::VectorXd Ap = A * p;
      const double pAp = p.dot(Ap);
      if (!(pAp > 0)) throw SolverError("pcg: breakdown, matrix is not positive definite");
      const double alpha = rz / pAp;
      x.noalias() += alpha * p;
      r.noalias() -= alpha * Ap;
      z = inv_diag.cwiseProduct(r);
      const double rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
      ++iterations;
    }
    r = b - A * x;
    const double res = r.norm() / bnorm;
    if (res <= tol) return x;
    if (iterations >= cap) throw cap_error();
    stalled = res < 0.5 * best ? 0 : stalled + 1;
    best = std::min(best, res);
    if (stalled >= 5) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "pcg: residual stagnates at %.1e after %d iterations, above tol %.1e", best,
                    iterations, tol);
      throw SolverError(msg);
    }
  }
}

}  // namespace

SolverMethod solver_method_from_string(const std::string& name) {
  if (name == "direct") return SolverMethod::direct;
  if (name == "pcg") return SolverMethod::pcg;
  throw std::invalid_argument("unknown solver '" + name + "' (expected direct or pcg)");
}

std::string to_string(SolverMethod method) {
  return method == SolverMethod::direct ? "direct" : "pcg";
}

SolveResult solve_spd(const SparseMatrix& matrix, const Eigen::VectorXd& rhs,
                      SolverMethod method, double tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != rhs.size()) {
    throw std::invalid_argument("solve_spd: dimension mismatch");
  }
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  result.report.method = method;
  if (rhs.size() == 0) {
    result.solution = Eigen::VectorXd(0);
  } else if (method == SolverMethod::direct) {
    result.solution = direct_solve(matrix, rhs, tol, result.report.backend, result.report.iterations);
  } else {
    result.report.backend = "jacobi-pcg";
    result.solution = pcg_solve(matrix, rhs, tol, result.report.iterations);
  }
  result.report.relative_residual =
      rhs.size() == 0 ? 0.0 : relative_residual(matrix, result.solution, rhs);
  result.report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace wg
