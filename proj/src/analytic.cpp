#include "wg/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wg/basis.hpp"

namespace wg {

namespace {

void check_order(int order) {
  if (order < 0 || order > 4) {
    throw std::invalid_argument("derivative order must lie in [0, 4]");
  }
}

// l = 1 - e^{-1/eps}
double layer_l(double eps) { return -std::expm1(-1.0 / eps); }

}  // namespace

Example example_from_int(int id) {
  switch (id) {
    case 0:
      return Example::polynomial;
    case 1:
      return Example::layer_sine;
    case 2:
      return Example::layer_cubic;
    default:
      throw std::invalid_argument("example must be 0, 1 or 2");
  }
}

int to_int(Example ex) { return static_cast<int>(ex); }

double eval_g(double x, double eps, int order) {
  check_order(order);
  constexpr double pi = std::numbers::pi;
  const double l = layer_l(eps);
  const double left = std::exp(-x / eps);
  const double right = std::exp((x - 1.0) / eps);

  const double smooth = std::pow(pi, order) * std::sin(pi * x + order * pi / 2.0);
  double layer;
  if (order == 0) {
    layer = (pi * eps / l) * (left + right - 1.0 - std::exp(-1.0 / eps));
  } else {
    // pi eps / l * eps^{-n} ((-1)^n e^{-x/eps} + e^{(x-1)/eps})
    const double scale = (pi / l) * std::pow(eps, 1 - order);
    layer = scale * ((order % 2 == 0 ? left : -left) + right);
  }
  return 0.5 * (smooth + layer);
}

double eval_p(double y, double eps, int order) {
  check_order(order);
  const double l = layer_l(eps);
  const double q = 2.0 - l;
  const double d = 1.0 / (q - 2.0 * eps * l);
  const double left = (3.0 / l - d) * std::exp(-y / eps);
  const double right = (3.0 / l + d) * std::exp((y - 1.0) / eps);

  switch (order) {
    case 0:
      return 2.0 * y * (1.0 - y * y) +
             eps * (l * d * (1.0 - 2.0 * y) - 3.0 * q / l + left + right);
    case 1:
      return 2.0 - 6.0 * y * y - 2.0 * eps * l * d - left + right;
    default: {
      const double polynomial = order == 2 ? -12.0 * y : (order == 3 ? -12.0 : 0.0);
      const double scale = std::pow(eps, 1 - order);
      return polynomial + scale * ((order % 2 == 0 ? left : -left) + right);
    }
  }
}

double eval_bubble(double x, int order) {
  check_order(order);
  switch (order) {
    case 0:
      return x * x * (1.0 - x) * (1.0 - x);
    case 1:
      return 2.0 * x - 6.0 * x * x + 4.0 * x * x * x;
    case 2:
      return 2.0 - 12.0 * x + 12.0 * x * x;
    case 3:
      return -12.0 + 24.0 * x;
    default:
      return 24.0;
  }
}

ExactSolution::ExactSolution(Example ex, double eps) : example_(ex), eps_(eps) {
  if (!(eps > 0)) throw std::invalid_argument("ExactSolution: eps must be positive");
}

double ExactSolution::factor_x(double x, int order) const {
  return example_ == Example::polynomial ? eval_bubble(x, order) : eval_g(x, eps_, order);
}

double ExactSolution::factor_y(double y, int order) const {
  switch (example_) {
    case Example::polynomial:
      return eval_bubble(y, order);
    case Example::layer_sine:
      return eval_g(y, eps_, order);
    case Example::layer_cubic:
      return eval_p(y, eps_, order);
  }
  throw std::logic_error("ExactSolution: invalid example");
}

double ExactSolution::derivative(int i, int j, double x, double y) const {
  return factor_x(x, i) * factor_y(y, j);
}

Eigen::Vector2d ExactSolution::gradient(double x, double y) const {
  return {derivative(1, 0, x, y), derivative(0, 1, x, y)};
}

double ExactSolution::laplacian(double x, double y) const {
  return derivative(2, 0, x, y) + derivative(0, 2, x, y);
}

double ExactSolution::bilaplacian(double x, double y) const {
  return derivative(4, 0, x, y) + 2.0 * derivative(2, 2, x, y) + derivative(0, 4, x, y);
}

double ExactSolution::forcing(double x, double y) const {
  return eps_ * eps_ * bilaplacian(x, y) - laplacian(x, y);
}

Eigen::VectorXd project_weak(const ShishkinMesh& mesh, const DofMap& dofs,
                             const std::function<double(double, double)>& u,
                             const std::function<Eigen::Vector2d(double, double)>& grad_u,
                             int q) {
  const int k = dofs.k();
  Eigen::VectorXd raw = Eigen::VectorXd::Zero(dofs.n_raw());
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    const Eigen::VectorXd coeffs = project_cell(u, mesh.cells[c], k, q);
    raw.segment(dofs.interior(static_cast<int>(c), 0), coeffs.size()) = coeffs;
  }
  for (const Edge& e : mesh.edges) {
    const Eigen::VectorXd tr = project_edge(u, e, k, q);
    const Eigen::MatrixX2d gr = project_edge_vector(grad_u, e, k, q);
    raw.segment(dofs.trace(e.id, 0), k + 1) = tr;
    raw.segment(dofs.gradient(e.id, 0, 0), k + 1) = gr.col(0);
    raw.segment(dofs.gradient(e.id, 1, 0), k + 1) = gr.col(1);
  }
  return raw;
}

Eigen::VectorXd project_exact(const ShishkinMesh& mesh, const DofMap& dofs,
                              const ExactSolution& u, int q) {
  Eigen::VectorXd raw = project_weak(
      mesh, dofs, [&u](double x, double y) { return u.value(x, y); },
      [&u](double x, double y) { return u.gradient(x, y); }, q);
  for (int r = 0; r < dofs.n_raw(); ++r) {
    if (dofs.constrained(r)) raw[r] = 0.0;
  }
  return raw;
}

}  // namespace wg
