#pragma once

// Run configuration and its flat "key = value" file format.
//
//   # comment (also ';')
//   [problem]
//   builtin = paper-test          # or omit and describe the problem below
//   length = 1
//
//   [stiffness]                   # m(z) = m0 + m1 z
//   m0 = 1
//   m1 = 0.5
//
//   [force]                       # f(x, u, v), v = u'
//   expression = 24 + 0*u*v
//   sigma1_norm = 24
//   sigma2_inf = 0
//   sigma3_inf = 0
//   l2_inf = 0
//   l3_inf = 0
//   assumptions_global = true
//
//   [exact]                       # optional, both or neither
//   u  = x^4 - 2*x^3 + x
//   du = 4*x^3 - 6*x^2 + 1
//
//   [solver]
//   n = 10
//   max_iter = 9
//   tol = 0
//   derivative_mode = kernel-analytic   # or finite-difference
//
//   [output]
//   csv = run.csv
//   plot = run.gp
//
// Expressions follow the grammar in expression.hpp.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/expression.hpp"
#include "kirchhoff/picard.hpp"
#include "kirchhoff/problem.hpp"

namespace kirchhoff {

struct CustomProblemSpec {
  double length = 1.0;
  double m0 = 1.0;
  double m1 = 0.0;
  std::string force_expression;
  ForceBounds bounds;
  bool assumptions_global = false;
  std::string exact_u;
  std::string exact_du;
};

struct RunConfig {
  std::string builtin = "paper-test";  // empty when `custom` describes the problem
  CustomProblemSpec custom;
  SolverConfig solver;
  std::string csv_path;
  std::string plot_path;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line;
};

[[noreturn]] inline void config_fail(std::string_view origin, int line, const std::string& msg) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << msg;
  throw ConfigError(os.str());
}

}  // namespace detail

/// Parses configuration text. `origin` prefixes diagnostics (usually the path).
inline RunConfig parse_config(std::string_view text, std::string_view origin = "<config>") {
  using detail::config_fail;
  static const std::map<std::string, std::vector<std::string>, std::less<>> schema{
      {"problem", {"builtin", "length"}},
      {"stiffness", {"m0", "m1"}},
      {"force", {"expression", "sigma1_norm", "sigma2_inf", "sigma3_inf", "l2_inf", "l3_inf", "assumptions_global"}},
      {"exact", {"u", "du"}},
      {"solver", {"n", "max_iter", "tol", "derivative_mode"}},
      {"output", {"csv", "plot"}},
  };

  std::map<std::string, detail::Entry> entries;  // "section.key"
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') config_fail(origin, line_no, "malformed section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (!schema.contains(section)) config_fail(origin, line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_fail(origin, line_no, "expected 'key = value'");
    if (section.empty()) config_fail(origin, line_no, "key outside of any section");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    const auto& keys = schema.find(section)->second;
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      config_fail(origin, line_no, "unknown key '" + key + "' in [" + section + "]");
    if (value.empty()) config_fail(origin, line_no, "empty value for '" + key + "'");
    const std::string full = section + "." + key;
    if (entries.contains(full)) config_fail(origin, line_no, "duplicate key '" + key + "' in [" + section + "]");
    entries.emplace(full, detail::Entry{value, line_no});
  }

  auto number = [&](const std::string& key, double& out) {
    auto it = entries.find(key);
    if (it == entries.end()) return false;
    const auto& v = it->second.value;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
      config_fail(origin, it->second.line, "'" + key + "' is not a number: " + v);
    return true;
  };
  auto integer = [&](const std::string& key, int& out) {
    auto it = entries.find(key);
    if (it == entries.end()) return false;
    const auto& v = it->second.value;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
      config_fail(origin, it->second.line, "'" + key + "' is not an integer: " + v);
    return true;
  };
  auto text_of = [&](const std::string& key) -> const detail::Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto line_of = [&](const std::string& key) {
    auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.line;
  };

  RunConfig cfg;
  const bool has_custom = text_of("force.expression") != nullptr;
  if (const auto* b = text_of("problem.builtin")) {
    if (b->value != "paper-test") config_fail(origin, b->line, "unknown builtin problem '" + b->value + "'");
    for (const auto& [k, e] : entries) {
      if (k.starts_with("stiffness.") || k.starts_with("force.") || k.starts_with("exact.") || k == "problem.length")
        config_fail(origin, e.line, "'" + k + "' cannot be combined with a builtin problem");
    }
    cfg.builtin = b->value;
  } else if (has_custom) {
    cfg.builtin.clear();
    auto& c = cfg.custom;
    c.force_expression = text_of("force.expression")->value;
    number("problem.length", c.length);
    number("stiffness.m0", c.m0);
    number("stiffness.m1", c.m1);
    number("force.sigma1_norm", c.bounds.sigma1_norm);
    number("force.sigma2_inf", c.bounds.sigma2_inf);
    number("force.sigma3_inf", c.bounds.sigma3_inf);
    number("force.l2_inf", c.bounds.l2_inf);
    number("force.l3_inf", c.bounds.l3_inf);
    if (const auto* g = text_of("force.assumptions_global")) {
      if (g->value == "true") c.assumptions_global = true;
      else if (g->value == "false") c.assumptions_global = false;
      else config_fail(origin, g->line, "'force.assumptions_global' must be true or false");
    }
    const auto* eu = text_of("exact.u");
    const auto* edu = text_of("exact.du");
    if ((eu == nullptr) != (edu == nullptr))
      config_fail(origin, eu ? eu->line : edu->line, "[exact] needs both 'u' and 'du'");
    if (eu) {
      c.exact_u = eu->value;
      c.exact_du = edu->value;
    }
  } else {
    for (const auto& [k, e] : entries) {
      if (k.starts_with("stiffness.") || k.starts_with("force.") || k.starts_with("exact.") || k == "problem.length")
        config_fail(origin, e.line, "custom problem is missing '[force] expression'");
    }
  }

  integer("solver.n", cfg.solver.n);
  integer("solver.max_iter", cfg.solver.max_iter);
  number("solver.tol", cfg.solver.tol);
  if (const auto* m = text_of("solver.derivative_mode")) {
    auto mode = parse_derivative_mode(m->value);
    if (!mode) config_fail(origin, m->line, "unknown derivative_mode '" + m->value + "'");
    cfg.solver.derivative_mode = *mode;
  }
  if (cfg.solver.n < 2) config_fail(origin, line_of("solver.n"), "'solver.n' must be at least 2");
  if (cfg.solver.max_iter < 1) config_fail(origin, line_of("solver.max_iter"), "'solver.max_iter' must be at least 1");
  if (!(cfg.solver.tol >= 0.0)) config_fail(origin, line_of("solver.tol"), "'solver.tol' must be nonnegative");
  if (const auto* p = text_of("output.csv")) cfg.csv_path = p->value;
  if (const auto* p = text_of("output.plot")) cfg.plot_path = p->value;
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

/// Materialises the problem a configuration describes. Invalid data
/// (bad expressions, failed sample checks) becomes a ConfigError.
inline BeamProblem build_problem(const RunConfig& cfg) {
  if (cfg.builtin == "paper-test") return make_paper_test_problem();
  if (!cfg.builtin.empty()) throw ConfigError("unknown builtin problem '" + cfg.builtin + "'");
  const auto& c = cfg.custom;
  try {
    auto f_expr = Expression::parse(c.force_expression, {"x", "u", "v"});
    auto force = make_force([f_expr](double x, double u, double v) { return f_expr(x, u, v); }, c.bounds,
                            c.assumptions_global);
    std::optional<ExactSolution> exact;
    if (!c.exact_u.empty()) {
      auto u = Expression::parse(c.exact_u, {"x"});
      auto du = Expression::parse(c.exact_du, {"x"});
      exact = ExactSolution{[u](double x) { return u(x); }, [du](double x) { return du(x); }};
    }
    return make_problem(c.length, make_affine_stiffness(c.m0, c.m1), std::move(force), std::move(exact));
  } catch (const ExpressionError& e) {
    throw ConfigError(std::string("invalid expression: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid problem: ") + e.what());
  }
}

}  // namespace kirchhoff
