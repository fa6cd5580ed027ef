#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wg/analytic.hpp"
#include "wg/dof_map.hpp"
#include "wg/mesh.hpp"

using namespace wg;

namespace {

constexpr double pi = std::numbers::pi;

// centered difference of the (order-1)-th derivative
template <typename F>
double fd(F f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

// eps^2 Bilaplacian - Laplacian of u by a 13-point stencil, one Richardson step
double stencil_forcing(const ExactSolution& u, double x, double y, double h) {
  auto at = [&](double hh) {
    auto v = [&](int i, int j) { return u.value(x + i * hh, y + j * hh); };
    const double lap = (v(1, 0) + v(-1, 0) + v(0, 1) + v(0, -1) - 4 * v(0, 0)) / (hh * hh);
    const double bilap = (20 * v(0, 0) - 8 * (v(1, 0) + v(-1, 0) + v(0, 1) + v(0, -1)) +
                          2 * (v(1, 1) + v(1, -1) + v(-1, 1) + v(-1, -1)) +
                          v(2, 0) + v(-2, 0) + v(0, 2) + v(0, -2)) /
                         std::pow(hh, 4);
    return u.eps() * u.eps() * bilap - lap;
  };
  return (4 * at(h) - at(2 * h)) / 3;
}

}  // namespace

TEST_CASE("example ids") {
  CHECK(example_from_int(0) == Example::polynomial);
  CHECK(to_int(example_from_int(2)) == 2);
  CHECK_THROWS_AS(example_from_int(3), std::invalid_argument);
  CHECK_THROWS_AS(eval_g(0.5, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(ExactSolution(Example::layer_sine, 0.0), std::invalid_argument);
}

TEST_CASE("profiles satisfy clamped boundary conditions") {
  for (double eps : {1.0, 1e-1, 1e-2, 1e-4, 1e-7}) {
    CAPTURE(eps);
    for (double t : {0.0, 1.0}) {
      CHECK(std::abs(eval_g(t, eps, 0)) <= 1e-15);
      CHECK(std::abs(eval_g(t, eps, 1)) <= 1e-13);
      CHECK(std::abs(eval_p(t, eps, 0)) <= 1e-14);
      CHECK(std::abs(eval_p(t, eps, 1)) <= 1e-13);
      CHECK(std::abs(eval_bubble(t, 0)) == 0.0);
      CHECK(std::abs(eval_bubble(t, 1)) == 0.0);
    }
  }
}

TEST_CASE("profile values") {
  // eps -> 0 leaves sin(pi x) / 2 away from the layers
  CHECK(eval_g(0.5, 1e-7, 0) == doctest::Approx(0.5 - 0.5 * pi * 1e-7).epsilon(1e-12));
  CHECK(eval_g(0.5, 1e-7, 2) == doctest::Approx(-0.5 * pi * pi).epsilon(1e-12));
  // eps = 1 closed form at the midpoint
  const double l = 1 - std::exp(-1.0);
  const double g = 0.5 * (1 + pi / l * (2 * std::exp(-0.5) - 1 - std::exp(-1.0)));
  CHECK(eval_g(0.5, 1.0, 0) == doctest::Approx(g).epsilon(1e-14));
  CHECK(eval_bubble(0.5, 0) == doctest::Approx(1.0 / 16));
}

TEST_CASE("derivatives agree with finite differences") {
  for (double eps : {1.0, 1e-1, 2e-2}) {
    const double h = 1e-5 * eps;
    for (double x : {0.013, 0.2, 0.5, 0.77, 0.995}) {
      for (int n = 1; n <= 4; ++n) {
        CAPTURE(eps);
        CAPTURE(x);
        CAPTURE(n);
        const double dg = fd([&](double t) { return eval_g(t, eps, n - 1); }, x, h);
        CHECK(eval_g(x, eps, n) == doctest::Approx(dg).epsilon(1e-6).scale(std::pow(eps, 1 - n)));
        const double dp = fd([&](double t) { return eval_p(t, eps, n - 1); }, x, h);
        CHECK(eval_p(x, eps, n) == doctest::Approx(dp).epsilon(1e-6).scale(std::pow(eps, 1 - n)));
        const double db = fd([&](double t) { return eval_bubble(t, n - 1); }, x, 1e-5);
        CHECK(eval_bubble(x, n) == doctest::Approx(db).epsilon(1e-8).scale(1.0));
      }
    }
  }
}

TEST_CASE("forcing matches a stencil applied to u") {
  SUBCASE("eps = 1 at the centre") {
    for (Example ex : {Example::polynomial, Example::layer_sine, Example::layer_cubic}) {
      const ExactSolution u(ex, 1.0);
      const double f = u.forcing(0.5, 0.5);
      CHECK(f == doctest::Approx(stencil_forcing(u, 0.5, 0.5, 1e-2)).epsilon(1e-5));
    }
  }
  SUBCASE("eps = 1e-2 near a layer") {
    for (Example ex : {Example::layer_sine, Example::layer_cubic}) {
      const ExactSolution u(ex, 1e-2);
      const double f = u.forcing(0.9, 0.05);
      CHECK(f == doctest::Approx(stencil_forcing(u, 0.9, 0.05, 1e-3)).epsilon(1e-4));
    }
  }
  SUBCASE("polynomial example closed form") {
    const ExactSolution u(Example::polynomial, 0.3);
    const double x = 0.3, y = 0.6;
    auto b = [](double t, int n) { return eval_bubble(t, n); };
    const double lap = b(x, 2) * b(y, 0) + b(x, 0) * b(y, 2);
    const double bilap = 24 * b(y, 0) + 2 * b(x, 2) * b(y, 2) + 24 * b(x, 0);
    CHECK(u.forcing(x, y) == doctest::Approx(0.09 * bilap - lap).epsilon(1e-14));
    CHECK(forcing(Example::polynomial, x, y, 0.3) == u.forcing(x, y));
  }
}

TEST_CASE("no overflow or NaN for small eps") {
  for (double eps : {1e-4, 1e-6, 1e-7}) {
    for (Example ex : {Example::layer_sine, Example::layer_cubic}) {
      const ExactSolution u(ex, eps);
      for (double x : {0.0, 1e-9, eps, 0.5, 1 - eps, 1.0}) {
        for (double y : {0.0, 3 * eps, 0.5, 1.0}) {
          CHECK(std::isfinite(u.forcing(x, y)));
          CHECK(std::isfinite(u.gradient(x, y).norm()));
        }
      }
    }
  }
}

TEST_CASE("moderate eps keeps u bounded") {
  for (double eps : {1.0, 0.5, 0.1}) {
    for (Example ex : {Example::layer_sine, Example::layer_cubic}) {
      const ExactSolution u(ex, eps);
      for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
          CHECK(std::abs(u.value(i / 20.0, j / 20.0)) <= 2.0);
        }
      }
    }
  }
}

TEST_CASE("project_exact zeroes constrained DOFs and nothing else structurally") {
  const auto mesh = build_mesh(MeshParams::with_default_alpha(8, 1e-2, 3));
  const DofMap dofs(mesh, 3);
  const ExactSolution u(Example::layer_cubic, 1e-2);
  const Eigen::VectorXd raw = project_exact(mesh, dofs, u, 6);
  const Eigen::VectorXd weak = project_weak(
      mesh, dofs, [&](double x, double y) { return u.value(x, y); },
      [&](double x, double y) { return u.gradient(x, y); }, 6);
  int constrained = 0;
  for (int r = 0; r < dofs.n_raw(); ++r) {
    if (dofs.constrained(r)) {
      ++constrained;
      CHECK(raw[r] == 0.0);
      // the exact boundary data are zero up to roundoff
      CHECK(std::abs(weak[r]) <= 1e-12);
    } else {
      CHECK(raw[r] == weak[r]);
    }
  }
  CHECK(constrained == dofs.n_constrained());
}
