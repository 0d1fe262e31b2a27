#pragma once

// Command implementations behind the `kirchhoff_cli` executable:
//
//   analyze            constants and hypothesis verdicts
//   solve              Picard run, per-iteration CSV and gnuplot script
//   reproduce-table1   error table of the built-in problem for n = 10, 20
//
// Exit codes: 0 success, 1 configuration error, 2 I/O error, 3 numerical
// failure.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "kirchhoff/analysis.hpp"
#include "kirchhoff/config.hpp"
#include "kirchhoff/errors.hpp"
#include "kirchhoff/picard.hpp"
#include "kirchhoff/report.hpp"

namespace kirchhoff {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitIo = 2, kExitNumerical = 3 };

inline AssumptionReport cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const BeamProblem problem = build_problem(cfg);
  // Default initial approximation u0 = 0.
  const AssumptionReport rep = constants(problem, 0.0);
  out << "problem: " << (cfg.builtin.empty() ? std::string("custom") : cfg.builtin) << "\n";
  render_report(out, rep);
  if (!rep.assumptions_global) out << "note: load bounds are not global; all constants are formal\n";
  return rep;
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

inline void finish_output(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace detail

inline Trajectory cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const BeamProblem problem = build_problem(cfg);
  const AssumptionReport rep = constants(problem, 0.0);
  Trajectory traj = solve(problem, cfg.solver, std::nullopt, rep.c1);

  std::vector<double> err;
  if (problem.exact) err = error_sequence(traj, problem, ErrorMetric::exact);
  const auto inc = error_sequence(traj, problem, ErrorMetric::increment);

  out << "n = " << cfg.solver.n << ", derivative mode = " << to_string(cfg.solver.derivative_mode) << "\n";
  out << std::setw(4) << "k" << std::setw(16) << "tau" << std::setw(20) << "||u_k-u_{k-1}||_1" << std::setw(20)
      << "max|u_k-u_{k-1}|";
  if (problem.exact) out << std::setw(16) << "max|u-u*|";
  out << "\n";
  for (const auto& st : traj.states) {
    out << std::setw(4) << st.k << std::setw(16) << std::setprecision(8) << st.tau;
    if (st.k == 0) {
      out << std::setw(20) << "-" << std::setw(20) << "-";
      if (problem.exact) out << std::setw(16) << "-";
    } else {
      out << std::setw(20) << *st.h1_diff << std::setw(20) << inc[st.k - 1];
      if (problem.exact) out << std::setw(16) << err[st.k - 1];
    }
    out << "\n";
  }
  for (const auto& w : traj.warnings) out << "warning: " << w << "\n";

  if (!cfg.csv_path.empty()) {
    auto f = detail::open_output(cfg.csv_path);
    write_trajectory_csv(f, traj, problem);
    detail::finish_output(f, cfg.csv_path);
    out << "wrote " << cfg.csv_path << "\n";
  }
  if (!cfg.plot_path.empty()) {
    const std::string data = cfg.csv_path.empty() ? std::string("solution.csv") : cfg.csv_path;
    auto f = detail::open_output(cfg.plot_path);
    std::ostringstream title;
    title << "Picard iterates, n = " << cfg.solver.n;
    write_plot_script(f, data, traj.states.back().k, problem.exact.has_value(), title.str());
    detail::finish_output(f, cfg.plot_path);
    out << "wrote " << cfg.plot_path << "\n";
  }
  return traj;
}

inline Table1Reproduction cmd_reproduce_table1(DerivativeMode mode, const std::string& csv_path, std::ostream& out) {
  Table1Reproduction t = reproduce_table1(mode);
  const ErrorTable pub = published_table1();
  out << "built-in problem, u0 = 0, derivative mode = " << to_string(mode) << "\n\n";
  print_table(out, pub, "published");
  out << "\n";
  print_table(out, t.increment, "computed, max_i |u_k(x_i) - u_{k-1}(x_i)|");
  out << "\n";
  print_table(out, t.exact_error, "computed, max_i |u_k(x_i) - u(x_i)|");
  if (!csv_path.empty()) {
    auto f = detail::open_output(csv_path);
    write_table_csv(f, {t.increment, t.exact_error}, &pub);
    detail::finish_output(f, csv_path);
    out << "\nwrote " << csv_path << "\n";
  }
  return t;
}

/// Parses `args` (args[0] is the program name) and dispatches.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Picard/Green's-function solver for the static Kirchhoff beam"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> n, max_iter;
  std::optional<double> tol;
  std::string mode_text;
  std::string csv_path, plot_path;

  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value problem/solver configuration file");
    sub->add_option("--n", n, "grid subintervals");
    sub->add_option("--max-iter", max_iter, "maximum number of iterations");
    sub->add_option("--tol", tol, "stop when ||u_k - u_{k-1}||_1 <= tol (0 disables)");
    sub->add_option("--derivative-mode", mode_text, "kernel-analytic | finite-difference");
  };
  auto* analyze = app.add_subcommand("analyze", "print omega, c1, c0, c2, q and hypothesis verdicts");
  add_solver_flags(analyze);
  auto* solve_cmd = app.add_subcommand("solve", "run the Picard iteration");
  add_solver_flags(solve_cmd);
  solve_cmd->add_option("--csv", csv_path, "per-iteration CSV output");
  solve_cmd->add_option("--plot", plot_path, "gnuplot script output");
  auto* table = app.add_subcommand("reproduce-table1", "error table of the built-in problem, n = 10 and 20");
  table->add_option("--derivative-mode", mode_text, "kernel-analytic | finite-difference");
  table->add_option("--csv", csv_path, "machine-readable table output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (n) cfg.solver.n = *n;
    if (max_iter) cfg.solver.max_iter = *max_iter;
    if (tol) cfg.solver.tol = *tol;
    if (!mode_text.empty()) {
      auto mode = parse_derivative_mode(mode_text);
      if (!mode) throw ConfigError("unknown --derivative-mode '" + mode_text + "'");
      cfg.solver.derivative_mode = *mode;
    }
    if (!csv_path.empty()) cfg.csv_path = csv_path;
    if (!plot_path.empty()) cfg.plot_path = plot_path;
    try {
      cfg.solver.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }

    if (analyze->parsed()) {
      cmd_analyze(cfg, out);
    } else if (solve_cmd->parsed()) {
      cmd_solve(cfg, out);
    } else {
      cmd_reproduce_table1(cfg.solver.derivative_mode, csv_path, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace kirchhoff
