#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "kirchhoff/analysis.hpp"
#include "synthetic.hpp"

using namespace kirchhoff;
using Catch::Approx;

namespace {

constexpr double pi = std::numbers::pi;

BeamProblem with_bounds(double length, double m0, double m1, ForceBounds b) {
  auto f = make_force([](double, double, double) { return 0.0; }, b, false);
  return make_problem(length, make_affine_stiffness(m0, m1), std::move(f));
}

ForceBounds bounds(double s1, double s2, double s3, double l2, double l3) {
  ForceBounds b;
  b.sigma1_norm = s1;
  b.sigma2_inf = s2;
  b.sigma3_inf = s3;
  b.l2_inf = l2;
  b.l3_inf = l3;
  return b;
}

}  // namespace

TEST_CASE("omega") {
  SECTION("no growth terms: alpha + (pi/l)^2") {
    CHECK(omega(with_bounds(1.0, 1.0, 0.0, {})) == Approx(1.0 + pi * pi).epsilon(1e-15));
    CHECK(omega(with_bounds(2.0, 3.0, 0.0, {})) == Approx(3.0 + pi * pi / 4.0).epsilon(1e-15));
  }
  SECTION("growth terms use (l/pi)^2 and l/pi weights") {
    const auto p = with_bounds(1.0, 1.0, 0.0, bounds(0.0, 2.0, 3.0, 0.0, 0.0));
    CHECK(omega(p) == Approx(1.0 + pi * pi - 2.0 / (pi * pi) - 3.0 / pi).epsilon(1e-14));
    const auto q = with_bounds(1.0, 1.0, 0.0, bounds(0.0, 0.0, pi, 0.0, 0.0));
    CHECK(omega(q) == Approx(pi * pi).epsilon(1e-15));
  }
  SECTION("the alternative grouping agrees when sigma2 = 0 or l = 2") {
    const auto a = with_bounds(1.0, 1.0, 0.0, bounds(0.0, 0.0, 3.0, 0.0, 0.0));
    CHECK(omega_alt(a) == Approx(omega(a)).epsilon(1e-15));
    const auto b = with_bounds(2.0, 1.0, 0.0, bounds(0.0, 1.5, 0.7, 0.0, 0.0));
    CHECK(omega_alt(b) == Approx(omega(b)).epsilon(1e-14));
    const auto c = with_bounds(1.0, 1.0, 0.0, bounds(0.0, 1.5, 0.7, 0.0, 0.0));
    CHECK(omega_alt(c) != Approx(omega(c)));
  }
}

TEST_CASE("c1 and q for unit data") {
  const auto p = with_bounds(1.0, 1.0, 0.0, bounds(1.0, 0.0, 0.0, 0.0, 0.0));
  const auto rep = constants(p, 0.0);
  REQUIRE(rep.c1);
  CHECK(*rep.c1 == Approx(0.029284403961554434).epsilon(1e-14));
  CHECK(*rep.q == 0.0);
  CHECK(rep.c0 == 0.0);
  CHECK(*rep.c2 == *rep.c1);

  const auto p2 = with_bounds(1.0, 1.0, 0.0, bounds(1.0, 0.0, 0.0, 1.0, 0.0));
  CHECK(*contraction_q(p2) == Approx(0.00932151529196254).epsilon(1e-14));
}

TEST_CASE("c2 has two cases") {
  const auto b = bounds(2.0, 0.5, 0.5, 0.5, 0.5);
  const auto p = with_bounds(1.0, 1.0, 0.0, b);
  const double w = omega(p);
  const double weight = 0.5 / (pi * pi) + 0.5 / pi;
  const double c1 = (1.0 / pi) * 2.0 / w;
  const double c0 = 1.0 / (1.0 + w / weight);

  SECTION("u0 inside c1: c2 = c1") {
    const auto rep = constants(p, 0.5 * c1);
    CHECK(*rep.c1 == Approx(c1).epsilon(1e-14));
    CHECK(rep.c0 == Approx(c0).epsilon(1e-14));
    CHECK(*rep.c2 == Approx(c1).epsilon(1e-14));
    CHECK(rep.u0_within_c1);
  }
  SECTION("u0 outside c1: c2 = c1 + c0 (||u0|| - c1)") {
    const auto rep = constants(p, 1.0);
    CHECK(*rep.c2 == Approx(c1 + c0 * (1.0 - c1)).epsilon(1e-14));
    CHECK_FALSE(rep.u0_within_c1);
    CHECK_FALSE(rep.hypotheses_certified);
  }
  SECTION("no growth terms: c2 = c1 whatever u0 is") {
    const auto q = with_bounds(1.0, 1.0, 0.0, bounds(2.0, 0.0, 0.0, 0.0, 0.0));
    const auto rep = constants(q, 10.0);
    CHECK(*rep.c2 == *rep.c1);
  }
}

TEST_CASE("nonpositive omega is reported, not thrown") {
  const auto p = with_bounds(10.0, 1.0, 0.5, bounds(1.0, 1.0, 0.0, 1.0, 0.0));
  REQUIRE(omega(p) <= 0.0);
  AssumptionReport rep;
  REQUIRE_NOTHROW(rep = constants(p, 0.0));
  CHECK_FALSE(rep.omega_positive);
  CHECK_FALSE(rep.c1);
  CHECK_FALSE(rep.q);
  CHECK_FALSE(rep.hypotheses_certified);
  CHECK_FALSE(rep.convergence_certified());
  CHECK_FALSE(contraction_q(p));
}

TEST_CASE("built-in problem constants are formal and not contractive") {
  const auto rep = constants(make_paper_test_problem(), 0.0);
  CHECK_FALSE(rep.assumptions_global);
  CHECK(rep.omega_positive);
  CHECK(rep.omega == Approx(1.0 + pi * pi - (1566.0 / 35.0) / (pi * pi) - (391.5 / 35.0) / pi).epsilon(1e-14));
  CHECK_FALSE(rep.q_contractive);
  CHECK_FALSE(rep.convergence_certified());
}

TEST_CASE("synthetic problem is certified with a small q") {
  const auto rep = constants(testing::make_synthetic_problem(), 0.0);
  CHECK(rep.convergence_certified());
  REQUIRE(rep.q);
  CHECK(*rep.q < 0.1);
}

TEST_CASE("closed-form q equals q written through c1") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int compared = 0;
  for (int t = 0; t < 100; ++t) {
    const double l = 0.5 + 2.0 * U(rng);
    const double m0 = 0.1 + 3.0 * U(rng);
    const double m1 = 2.0 * U(rng);
    const auto b = bounds(5.0 * U(rng), U(rng), U(rng), 2.0 * U(rng), 2.0 * U(rng));
    const auto p = with_bounds(l, m0, m1, b);
    const auto q = contraction_q(p);
    if (!q) continue;
    const double c1 = (l / pi) * b.sigma1_norm / omega(p);
    CHECK(contraction_q_from_c1(m0, l, c1, m1, b.l2_inf, b.l3_inf) == Approx(*q).epsilon(1e-12));
    ++compared;
  }
  CHECK(compared > 50);
}

TEST_CASE("recursive bound") {
  CHECK(recursive_bound(0.5, 1.0, 0.0) == 2.0);
  CHECK(recursive_bound(0.5, 1.0, 4.0) == 3.0);
  CHECK(recursive_bound(0.5, 1.0, 2.0) == 2.0);
  CHECK(recursive_bound(0.0, 2.0, 5.0) == 2.0);
  CHECK_THROWS_AS(recursive_bound(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(recursive_bound(-0.1, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(recursive_bound(0.5, 0.0, 0.0), std::invalid_argument);

  double prev = 0.0;
  for (double v0 = 0.0; v0 <= 10.0; v0 += 0.25) {
    const double v = recursive_bound(0.3, 0.7, v0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(recursive_bound(0.2, 1.0, 3.0) <= recursive_bound(0.4, 1.0, 3.0));
  CHECK(recursive_bound(0.2, 1.0, 3.0) <= recursive_bound(0.2, 1.5, 3.0));

  // The bound holds along the extremal recursion v_k = a v_{k-1} + b.
  double v = 5.0;
  const double bound = recursive_bound(0.6, 0.4, v);
  for (int k = 0; k < 50; ++k) {
    v = 0.6 * v + 0.4;
    CHECK(v <= bound + 1e-15);
  }
}

TEST_CASE("a priori bound") {
  CHECK(a_priori_bound(0.5, 1, 1, 1.0, pi) == 0.5);
  CHECK(a_priori_bound(0.5, 1, 0, 1.0, pi) == Approx(0.5).epsilon(1e-15));
  CHECK(a_priori_bound(0.5, 2, 0, 1.0, 2.0 * pi) == Approx(0.5).epsilon(1e-15));
  CHECK(a_priori_bound(0.5, 3, 0, 1.0, pi) == Approx(0.125).epsilon(1e-15));
  CHECK(a_priori_bound(0.0, 3, 1, 7.0, 1.0) == 0.0);
  for (int p : {0, 1}) {
    for (int k = 1; k < 30; ++k) {
      const double q = 0.37;
      CHECK(a_priori_bound(q, k + 1, p, 2.5, 1.3) == q * a_priori_bound(q, k, p, 2.5, 1.3));
    }
  }
  CHECK_THROWS_AS(a_priori_bound(1.0, 1, 1, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(a_priori_bound(0.5, 0, 1, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(a_priori_bound(0.5, 1, 2, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("constants reject a negative initial norm") {
  CHECK_THROWS_AS(constants(make_paper_test_problem(), -1.0), std::invalid_argument);
}
