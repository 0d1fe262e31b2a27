#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "kirchhoff/config.hpp"
#include "kirchhoff/expression.hpp"

using namespace kirchhoff;
using Catch::Approx;

TEST_CASE("expression arithmetic and precedence") {
  auto e = [](std::string_view s, double x = 0.0) { return Expression::parse(s, {"x"})(x); };
  CHECK(e("1 + 2 * 3") == 7.0);
  CHECK(e("(1 + 2) * 3") == 9.0);
  CHECK(e("2 ^ 3 ^ 2") == 512.0);
  CHECK(e("-x^2", 3.0) == -9.0);
  CHECK(e("-(x)^2", 3.0) == -9.0);
  CHECK(e("(-x)^2", 3.0) == 9.0);
  CHECK(e("10 / 4 / 5") == 0.5);
  CHECK(e("8 - 3 - 2") == 3.0);
  CHECK(e("1.5e2 + 2E-1") == 150.2);
  CHECK(e("+x", 4.0) == 4.0);
  CHECK(e("x^4 - 2*x^3 + x", 0.5) == Approx(0.3125).epsilon(1e-15));
}

TEST_CASE("expressions bind variables by position") {
  const auto f = Expression::parse("x + 10*u + 100*v", {"x", "u", "v"});
  CHECK(f(1.0, 2.0, 3.0) == 321.0);
  CHECK(f.variables().size() == 3);
  const double vals[2] = {1.0, 2.0};
  CHECK_THROWS_AS(f.evaluate(vals), std::invalid_argument);
}

TEST_CASE("expression errors carry a column") {
  auto col = [](std::string_view s) {
    try {
      Expression::parse(s, {"x"});
    } catch (const ExpressionError& e) {
      return static_cast<long>(e.column());
    }
    return -1L;
  };
  CHECK(col("") >= 0);
  CHECK(col("1 +") >= 0);
  CHECK(col("y + 1") == 0);
  CHECK(col("x + y") == 4);
  CHECK(col("(x + 1") >= 0);
  CHECK(col("x 1") >= 0);
  CHECK(col("x $ 1") == 2);
  CHECK(col("1.5.2") >= 0);
}

TEST_CASE("expression division by zero is not an error at parse time") {
  const auto f = Expression::parse("1/(x-x)", {"x"});
  CHECK_FALSE(std::isfinite(f(1.0)));
}

TEST_CASE("default configuration is the built-in problem") {
  const auto cfg = parse_config("");
  CHECK(cfg.builtin == "paper-test");
  CHECK(cfg.solver.n == 10);
  CHECK(cfg.solver.max_iter == 9);
  CHECK(cfg.solver.tol == 0.0);
  CHECK(cfg.solver.derivative_mode == DerivativeMode::kernel_analytic);
}

TEST_CASE("full custom configuration") {
  const auto cfg = parse_config(R"(
# comment
[problem]
length = 2

[stiffness]
m0 = 1.5   ; trailing comment
m1 = 0.25

[force]
expression = 1 + 0.5*sin_free + u
sigma1_norm = 3
sigma2_inf = 1
sigma3_inf = 0
l2_inf = 1
l3_inf = 0
assumptions_global = false

[solver]
n = 24
max_iter = 4
tol = 1e-8
derivative_mode = finite-difference

[output]
csv = out.csv
plot = out.gp
)");
  CHECK(cfg.builtin.empty());
  CHECK(cfg.custom.length == 2.0);
  CHECK(cfg.custom.m0 == 1.5);
  CHECK(cfg.custom.m1 == 0.25);
  CHECK(cfg.custom.bounds.sigma1_norm == 3.0);
  CHECK(cfg.custom.bounds.l2_inf == 1.0);
  CHECK_FALSE(cfg.custom.assumptions_global);
  CHECK(cfg.solver.n == 24);
  CHECK(cfg.solver.max_iter == 4);
  CHECK(cfg.solver.tol == 1e-8);
  CHECK(cfg.solver.derivative_mode == DerivativeMode::finite_difference);
  CHECK(cfg.csv_path == "out.csv");
  CHECK(cfg.plot_path == "out.gp");
  // The expression names an unknown variable: caught when the problem is built.
  CHECK_THROWS_AS(build_problem(cfg), ConfigError);
}

TEST_CASE("custom problem is built from expressions") {
  const auto cfg = parse_config(R"(
[problem]
length = 1
[stiffness]
m0 = 1
m1 = 0.5
[force]
expression = (43.5 + 348*x - 348*x^2 + 87*u + 87*v^2 - 174*x*v) / 35 + 0*x
[exact]
u = x^4 - 2*x^3 + x
du = 4*x^3 - 6*x^2 + 1
)");
  const auto p = build_problem(cfg);
  REQUIRE(p.exact);
  CHECK(p.exact->u(0.5) == Approx(0.3125).epsilon(1e-15));
  CHECK_FALSE(p.force.assumptions_global);
}

TEST_CASE("configuration diagnostics name origin and line") {
  auto message = [](std::string_view text) {
    try {
      parse_config(text, "cfg.ini");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("[bogus]").starts_with("cfg.ini:1:"));
  CHECK(message("\n[solver]\nwidth = 3").starts_with("cfg.ini:3:"));
  CHECK(message("n = 3").find("outside") != std::string::npos);
  CHECK(message("[solver]\nn").find("key = value") != std::string::npos);
  CHECK(message("[solver]\nn = 4\nn = 5").find("duplicate") != std::string::npos);
  CHECK(message("[solver]\nn = four").find("not an integer") != std::string::npos);
  CHECK(message("[solver]\nn = 1").find("at least 2") != std::string::npos);
  CHECK(message("[solver]\nmax_iter = 0").find("at least 1") != std::string::npos);
  CHECK(message("[solver]\ntol = -1").find("nonnegative") != std::string::npos);
  CHECK(message("[solver]\nderivative_mode = spectral").find("derivative_mode") != std::string::npos);
  CHECK(message("[problem]\nbuiltin = other").find("unknown builtin") != std::string::npos);
  CHECK(message("[problem]\nbuiltin = paper-test\n[stiffness]\nm0 = 2").find("builtin") != std::string::npos);
  CHECK(message("[stiffness]\nm0 = 2").find("expression") != std::string::npos);
  CHECK(message("[force]\nexpression = 1\n[exact]\nu = x").find("both") != std::string::npos);
  CHECK(message("[force]\nexpression = 1\nassumptions_global = maybe").find("true or false") != std::string::npos);
  CHECK(message("[solver]\nn =").find("empty value") != std::string::npos);
  CHECK(message("[solver").find("section header") != std::string::npos);
}

TEST_CASE("invalid problem data becomes a configuration error") {
  CHECK_THROWS_AS(build_problem(parse_config("[stiffness]\nm0 = 0\n[force]\nexpression = 1")), ConfigError);
  CHECK_THROWS_AS(build_problem(parse_config("[problem]\nlength = -1\n[force]\nexpression = 1")), ConfigError);
  CHECK_THROWS_AS(build_problem(parse_config("[force]\nexpression = 1 +")), ConfigError);
  // Declared global with understated bounds.
  CHECK_THROWS_AS(
      build_problem(parse_config("[force]\nexpression = 5*u\nsigma2_inf = 1\nl2_inf = 5\nassumptions_global = true")),
      ConfigError);
  // Exact solution that does not vanish at the ends.
  CHECK_THROWS_AS(build_problem(parse_config("[force]\nexpression = 1\n[exact]\nu = x\ndu = 1")), ConfigError);
}

TEST_CASE("load_config reads files and reports unreadable paths") {
  const std::string path = "test_expression_config_tmp.ini";
  {
    std::ofstream f(path);
    f << "[solver]\nn = 12\n";
  }
  CHECK(load_config(path).solver.n == 12);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config("/nonexistent/dir/none.ini"), IoError);
}

TEST_CASE("shipped sample configurations load and build") {
  const std::string dir = KIRCHHOFF_CONFIG_DIR;
  const auto builtin = load_config(dir + "/paper-test.ini");
  CHECK(builtin.builtin == "paper-test");
  CHECK_NOTHROW(build_problem(builtin));

  const auto growth = build_problem(load_config(dir + "/linear-growth.ini"));
  CHECK(growth.force.assumptions_global);

  const auto beam = build_problem(load_config(dir + "/long-beam.ini"));
  CHECK(beam.length_l == 6.0);
}
