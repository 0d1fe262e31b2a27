#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kirchhoff/green_kernel.hpp"
#include "kirchhoff/grid.hpp"
#include "kirchhoff/oracle.hpp"

using namespace kirchhoff;
using Catch::Approx;

TEST_CASE("kernel vanishes at the ends and is symmetric") {
  for (double a : {0.01, 1.0, 7.5, 400.0}) {
    for (double l : {0.5, 1.0, 3.0}) {
      const KernelParams k(a, l);
      for (int i = 0; i <= 20; ++i) {
        const double x = l * i / 20.0;
        CHECK(std::abs(kernel(0.0, x, k)) <= 1e-14);
        CHECK(std::abs(kernel(l, x, k)) <= 1e-14);
        for (int j = 0; j <= 20; ++j) {
          const double xi = l * j / 20.0;
          CHECK(kernel(x, xi, k) == kernel(xi, x, k));
          CHECK(std::abs(kernel(l - x, l - xi, k) - kernel(x, xi, k)) <= 1e-13);
        }
      }
    }
  }
}

TEST_CASE("kernel midspan value") {
  // (1/4 - sinh^2(1/2) / sinh(1)) for a = l = 1.
  CHECK(kernel(0.5, 0.5, KernelParams(1.0, 1.0)) == Approx(0.018941421369995076).epsilon(1e-13));
}

TEST_CASE("kernel matches a finite-difference point-load solve") {
  // The discrete response to e_j / h approximates G(., x_j) to O(h^2).
  const double a = 2.0, l = 1.0;
  const int n = 400;
  const Grid g(n, l);
  const double h = g.h();
  const std::size_t m = n - 1;
  for (int j : {100, 200, 333}) {
    const auto bands = fd_bands(a, h, n);
    std::vector<double> rhs(m, 0.0);
    rhs[j - 1] = h * h * h;
    const auto v = solve_pentadiagonal(bands, rhs);
    const KernelParams k(a, l);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, std::abs(v[i] - kernel(g.node(i + 1), g.node(j), k)));
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("kernel derivative agrees with central differences away from the diagonal") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double eps = 1e-5;
  for (double a : {0.3, 1.0, 25.0}) {
    const double l = 1.7;
    const KernelParams k(a, l);
    for (int t = 0; t < 50; ++t) {
      const double x = eps + (l - 2 * eps) * U(rng);
      const double xi = l * U(rng);
      if (std::abs(x - xi) < 10 * eps) continue;
      const double fd = (kernel(x + eps, xi, k) - kernel(x - eps, xi, k)) / (2 * eps);
      CHECK(kernel_dx(x, xi, k) == Approx(fd).margin(1e-8));
    }
  }
}

TEST_CASE("kernel derivative is odd under reflection and the diagonal is the average") {
  const KernelParams k(3.0, 2.0);
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double x = 0.2 * i, xi = 0.2 * j;
      CHECK(std::abs(kernel_dx(2.0 - x, 2.0 - xi, k) + kernel_dx(x, xi, k)) <= 1e-13);
    }
  }
  // A point load at midspan has zero slope there.
  CHECK(std::abs(kernel_dx(1.0, 1.0, k)) <= 1e-15);
}

TEST_CASE("slope of a symmetric response vanishes at midspan") {
  const KernelParams k(1.5, 1.0);
  const Grid g(200, 1.0);
  std::vector<double> vals(g.size());
  for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = kernel_dx(0.5, g.node(static_cast<int>(j)), k);
  CHECK(std::abs(trapezoid(vals, g.h())) <= 1e-14);
}

TEST_CASE("stable hyperbolic ratios match the naive formulas for moderate arguments") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const double s = 1e-3 + 5.0 * U(rng);
    const double p = s * U(rng), q = s * U(rng);
    const double naive = std::sinh(p) * std::sinh(q) / std::sinh(s);
    CHECK(stable_sinh_ratio(p, q, s) == Approx(naive).epsilon(1e-13));
    CHECK(stable_sinh_ratio(-p, q, s) == Approx(-naive).epsilon(1e-13));
    const double naive_c = std::cosh(p) * std::sinh(q) / std::sinh(s);
    CHECK(stable_cosh_sinh_ratio(p, q, s) == Approx(naive_c).epsilon(1e-13));
  }
  CHECK(stable_sinh_ratio(0.0, 1.0, 2.0) == 0.0);
  CHECK(stable_cosh_sinh_ratio(1.0, 0.0, 2.0) == 0.0);
}

TEST_CASE("kernel stays finite for very stiff and very soft coefficients") {
  SECTION("a = 1e6: naive sinh would overflow") {
    const KernelParams k(1e6, 1.0);
    for (int i = 1; i < 20; ++i) {
      const double x = i / 20.0;
      const double v = kernel(x, x, k);
      CHECK(std::isfinite(v));
      CHECK(v > 0.0);
      CHECK(std::isfinite(kernel_dx(x, 0.5, k)));
    }
    // Boundary layer asymptotics: G(x, x) ~ (x(l-x)/l - 1/(2s)) / a.
    CHECK(kernel(0.5, 0.5, k) == Approx((0.25 - 0.5e-3) / 1e6).epsilon(1e-9));
  }
  SECTION("a -> 0 approaches the pure bending kernel") {
    const KernelParams k(1e-6, 1.0);
    CHECK(kernel(0.5, 0.5, k) == Approx(1.0 / 48.0).margin(1e-6));
  }
}

TEST_CASE("kernel is positive in the open square") {
  for (double a : {1e-3, 1.0, 100.0}) {
    const KernelParams k(a, 1.0);
    for (int i = 1; i < 25; ++i)
      for (int j = 1; j < 25; ++j) CHECK(kernel(i / 25.0, j / 25.0, k) > 0.0);
  }
}

TEST_CASE("kernel rejects bad parameters and positions") {
  CHECK_THROWS_AS(KernelParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelParams(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelParams(1.0, 0.0), std::invalid_argument);
  const KernelParams k(1.0, 1.0);
  CHECK_THROWS_AS(kernel(-0.1, 0.5, k), std::out_of_range);
  CHECK_THROWS_AS(kernel(0.5, 1.1, k), std::out_of_range);
  CHECK_THROWS_AS(kernel_dx(1.5, 0.5, k), std::out_of_range);
}
