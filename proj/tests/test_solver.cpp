#include <random>

#include "doctest.h"
#include "wg/solver.hpp"

using namespace wg;

namespace {

SparseMatrix from_dense(const Eigen::MatrixXd& d) {
  return d.sparseView();
}

// random sparse SPD matrix: banded Laplacian-like part plus a diagonal shift
SparseMatrix random_spd(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<Eigen::Triplet<double>> t;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j : {i + 1, i + 7}) {
      if (j >= n) continue;
      const double w = u(rng);
      t.emplace_back(i, j, -w);
      t.emplace_back(j, i, -w);
      diag[i] += w;
      diag[j] += w;
    }
  }
  for (int i = 0; i < n; ++i) t.emplace_back(i, i, diag[i] + 1e-2 * u(rng));
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

TEST_CASE("method names") {
  CHECK(solver_method_from_string("pcg") == SolverMethod::pcg);
  CHECK(to_string(SolverMethod::direct) == "direct");
  CHECK_THROWS_AS(solver_method_from_string("lu"), std::invalid_argument);
}

TEST_CASE("identity and a 2x2 system") {
  for (SolverMethod m : {SolverMethod::direct, SolverMethod::pcg}) {
    SparseMatrix I(5, 5);
    I.setIdentity();
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(5, 1, 5);
    CHECK((solve_spd(I, b, m).solution - b).norm() <= 1e-15);

    Eigen::Matrix2d A;
    A << 2, 1, 1, 2;
    const SolveResult r = solve_spd(from_dense(A), Eigen::Vector2d(3, 3), m);
    CHECK(r.solution[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.solution[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.report.method == m);
    CHECK(!r.report.backend.empty());
  }
}

TEST_CASE("zero right-hand side and empty system") {
  const SparseMatrix A = random_spd(20, 1);
  for (SolverMethod m : {SolverMethod::direct, SolverMethod::pcg}) {
    CHECK(solve_spd(A, Eigen::VectorXd::Zero(20), m).solution.norm() == 0.0);
    CHECK(solve_spd(SparseMatrix(0, 0), Eigen::VectorXd(0), m).solution.size() == 0);
  }
  CHECK_THROWS_AS(solve_spd(A, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("direct and PCG agree on random SPD systems") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const int n = 200 + 50 * static_cast<int>(seed);
    const SparseMatrix A = random_spd(n, seed);
    std::mt19937 rng(seed + 100);
    std::normal_distribution<double> d;
    Eigen::VectorXd b(n);
    for (auto& x : b) x = d(rng);
    const SolveResult direct = solve_spd(A, b, SolverMethod::direct);
    const SolveResult pcg = solve_spd(A, b, SolverMethod::pcg, 1e-13);
    CHECK((direct.solution - pcg.solution).norm() <= 1e-9 * direct.solution.norm());
    CHECK(pcg.report.iterations > 0);
    // the reported residual is recomputed, not the recursive one
    const double res = (b - A * pcg.solution).norm() / b.norm();
    CHECK(pcg.report.relative_residual == doctest::Approx(res).epsilon(1e-12));
    CHECK(res <= 2e-13);
    CHECK(direct.report.relative_residual <= 1e-12);
  }
}

TEST_CASE("PCG reports an unreachable tolerance instead of spinning") {
  // entries spread over 16 orders of magnitude put the rounding floor of
  // the relative residual far above 1e-30
  SparseMatrix A = random_spd(100, 7);
  for (int i = 0; i < 50; ++i) A.coeffRef(i, i) *= 1e16;
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(100);
  try {
    solve_spd(A, b, SolverMethod::pcg, 1e-30);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(std::string(e.what()).find("stagnates") != std::string::npos);
  }
}

TEST_CASE("indefinite matrices are rejected") {
  Eigen::Matrix2d A;
  A << 1, 2, 2, 1;
  const SparseMatrix S = from_dense(A);
  CHECK_THROWS_AS(solve_spd(S, Eigen::Vector2d(1, 0), SolverMethod::direct), SolverError);
  CHECK_THROWS_AS(solve_spd(S, Eigen::Vector2d(1, 0), SolverMethod::pcg), SolverError);

  Eigen::Matrix2d B;
  B << -1, 0, 0, 2;
  CHECK_THROWS_AS(solve_spd(from_dense(B), Eigen::Vector2d(1, 1), SolverMethod::pcg), SolverError);
}
