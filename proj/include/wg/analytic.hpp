#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "wg/dof_map.hpp"
#include "wg/mesh.hpp"

namespace wg {

/// Manufactured solutions. `polynomial` is u = x^2 (1-x)^2 y^2 (1-y)^2,
/// `layer_sine` is u = g(x) g(y) and `layer_cubic` is u = g(x) p(y).
enum class Example { polynomial = 0, layer_sine = 1, layer_cubic = 2 };

Example example_from_int(int id);
int to_int(Example ex);

/// n-th derivative (0 <= n <= 4) of the boundary-layer profile
/// g(x) = 1/2 [sin(pi x) + pi eps / l (e^{-x/eps} + e^{(x-1)/eps} - 1 - e^{-1/eps})],
/// l = 1 - e^{-1/eps}.
double eval_g(double x, double eps, int order);

/// n-th derivative (0 <= n <= 4) of
/// p(y) = 2y(1-y^2) + eps [l d (1-2y) - 3q/l + (3/l - d) e^{-y/eps} + (3/l + d) e^{(y-1)/eps}]
/// with l = 1 - e^{-1/eps}, q = 2 - l, d = 1 / (q - 2 eps l).
double eval_p(double y, double eps, int order);

/// n-th derivative of x^2 (1-x)^2.
double eval_bubble(double x, int order);

/// Separable exact solution u(x, y) = a(x) b(y).
class ExactSolution {
 public:
  ExactSolution(Example ex, double eps);

  [[nodiscard]] Example example() const { return example_; }
  [[nodiscard]] double eps() const { return eps_; }

  /// d^i/dx^i d^j/dy^j u, 0 <= i, j <= 4.
  [[nodiscard]] double derivative(int i, int j, double x, double y) const;
  [[nodiscard]] double value(double x, double y) const { return derivative(0, 0, x, y); }
  [[nodiscard]] Eigen::Vector2d gradient(double x, double y) const;
  [[nodiscard]] double laplacian(double x, double y) const;
  [[nodiscard]] double bilaplacian(double x, double y) const;
  /// eps^2 Bilaplacian(u) - Laplacian(u)
  [[nodiscard]] double forcing(double x, double y) const;

 private:
  [[nodiscard]] double factor_x(double x, int order) const;
  [[nodiscard]] double factor_y(double y, int order) const;

  Example example_;
  double eps_;
};

inline double forcing(Example ex, double x, double y, double eps) {
  return ExactSolution(ex, eps).forcing(x, y);
}

/// Q_N u: per-cell Q_0 u, per-edge Q_b u and componentwise Q_g (grad u), in
/// raw DOF numbering. Constrained boundary entries are set to exactly zero.
Eigen::VectorXd project_exact(const ShishkinMesh& mesh, const DofMap& dofs,
                              const ExactSolution& u, int q);

/// Q_N of an arbitrary smooth function given with its gradient; no
/// constrained entries are touched.
Eigen::VectorXd project_weak(const ShishkinMesh& mesh, const DofMap& dofs,
                             const std::function<double(double, double)>& u,
                             const std::function<Eigen::Vector2d(double, double)>& grad_u,
                             int q);

}  // namespace wg
