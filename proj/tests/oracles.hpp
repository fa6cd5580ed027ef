#pragma once

// Test-only reference computations. Basis values here come from
// std::legendre rather than the library's recurrence, and integrals use a
// separately chosen high-order rule.

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Core>

#include "wg/basis.hpp"
#include "wg/mesh.hpp"
#include "wg/quadrature.hpp"
#include "wg/weak_ops.hpp"

namespace wg::oracle {

inline double legendre_normalized(int n, double t) {
  return std::sqrt((2.0 * n + 1.0) / 2.0) * std::legendre(static_cast<unsigned>(n), t);
}

/// Basis member (m, n) of the cell at (x, y).
inline double cell_basis_value(const Cell& c, int m, int n, double x, double y) {
  const double t1 = 2.0 * (x - c.x.lo) / c.h1() - 1.0;
  const double t2 = 2.0 * (y - c.y.lo) / c.h2() - 1.0;
  return std::sqrt(4.0 / (c.h1() * c.h2())) * legendre_normalized(m, t1) *
         legendre_normalized(n, t2);
}

/// Integral over the rectangle [x0,x1] x [y0,y1] with a q x q Gauss rule.
inline double integrate_rect(const std::function<double(double, double)>& f, double x0,
                             double x1, double y0, double y1, int q = 20) {
  const auto rule = gauss_legendre(q);
  double sum = 0;
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const double x = x0 + 0.5 * (x1 - x0) * (rule.nodes[a] + 1.0);
      const double y = y0 + 0.5 * (y1 - y0) * (rule.nodes[b] + 1.0);
      sum += rule.weights[a] * rule.weights[b] * f(x, y);
    }
  }
  return 0.25 * (x1 - x0) * (y1 - y0) * sum;
}

/// Integral along the segment start -> end (arc length measure).
inline double integrate_segment(const std::function<double(double, double)>& f,
                                const Eigen::Vector2d& start, const Eigen::Vector2d& end,
                                int q = 20) {
  const auto rule = gauss_legendre(q);
  const double len = (end - start).norm();
  double sum = 0;
  for (int p = 0; p < q; ++p) {
    const Eigen::Vector2d pt = start + 0.5 * (rule.nodes[p] + 1.0) * (end - start);
    sum += rule.weights[p] * f(pt.x(), pt.y());
  }
  return 0.5 * len * sum;
}

/// A smooth test function with its gradient and Laplacian.
struct TestFunction {
  std::function<double(double, double)> u;
  std::function<Eigen::Vector2d(double, double)> grad;
  std::function<double(double, double)> lap;
};

/// Random polynomial sum c_mn x^m y^n with m, n <= degree.
inline TestFunction random_polynomial(int degree, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd c(degree + 1, degree + 1);
  for (int m = 0; m <= degree; ++m)
    for (int n = 0; n <= degree; ++n) c(m, n) = dist(rng);
  auto mono = [](int p, double x, int d) {
    // d-th derivative of x^p
    if (d > p) return 0.0;
    double coef = 1;
    for (int i = 0; i < d; ++i) coef *= (p - i);
    return coef * std::pow(x, p - d);
  };
  auto eval = [c, mono, degree](double x, double y, int dx, int dy) {
    double s = 0;
    for (int m = 0; m <= degree; ++m)
      for (int n = 0; n <= degree; ++n) s += c(m, n) * mono(m, x, dx) * mono(n, y, dy);
    return s;
  };
  return {[eval](double x, double y) { return eval(x, y, 0, 0); },
          [eval](double x, double y) { return Eigen::Vector2d(eval(x, y, 1, 0), eval(x, y, 0, 1)); },
          [eval](double x, double y) { return eval(x, y, 2, 0) + eval(x, y, 0, 2); }};
}

/// Random smooth non-polynomial exp(a x) sin(b y + c) + cos(d x + e y).
inline TestFunction random_smooth(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const double a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng), e = dist(rng);
  return {[=](double x, double y) { return std::exp(a * x) * std::sin(b * y + c) + std::cos(d * x + e * y); },
          [=](double x, double y) {
            return Eigen::Vector2d(a * std::exp(a * x) * std::sin(b * y + c) - d * std::sin(d * x + e * y),
                                   b * std::exp(a * x) * std::cos(b * y + c) - e * std::sin(d * x + e * y));
          },
          [=](double x, double y) {
            return (a * a - b * b) * std::exp(a * x) * std::sin(b * y + c) -
                   (d * d + e * e) * std::cos(d * x + e * y);
          }};
}

/// Local DOFs of Q_N u on one cell, in LocalDofLayout order.
inline Eigen::VectorXd local_projection(const TestFunction& f, const Cell& cell, int k, int q) {
  const LocalDofLayout layout{k};
  Eigen::VectorXd v(layout.size());
  v.head(layout.n_interior()) = project_cell(f.u, cell, k, q);
  for (Side s : kSides) {
    const auto [start, end] = side_segment(cell, s);
    const EdgeBasis eb = edge_basis(k, start, end, q);
    for (int a = 0; a <= k; ++a) {
      double tr = 0, gx = 0, gy = 0;
      for (int p = 0; p < q; ++p) {
        const double w = eb.weights[p] * eb.value(p, a);
        const Eigen::Vector2d g = f.grad(eb.points(0, p), eb.points(1, p));
        tr += w * f.u(eb.points(0, p), eb.points(1, p));
        gx += w * g.x();
        gy += w * g.y();
      }
      v[layout.trace(s) + a] = tr;
      v[layout.gradient(s, 0) + a] = gx;
      v[layout.gradient(s, 1) + a] = gy;
    }
  }
  return v;
}

}  // namespace wg::oracle
