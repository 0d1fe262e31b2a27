#pragma once

// Error tables, CSV output/input, gnuplot scripts and text rendering of the
// assumption report.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <future>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "kirchhoff/analysis.hpp"
#include "kirchhoff/errors.hpp"
#include "kirchhoff/picard.hpp"
#include "kirchhoff/problem.hpp"

namespace kirchhoff {

enum class ErrorMetric {
  exact,      // max_i |u_k(x_i) - u(x_i)|
  increment,  // max_i |u_k(x_i) - u_{k-1}(x_i)|
};

inline std::string_view to_string(ErrorMetric m) { return m == ErrorMetric::exact ? "exact" : "increment"; }

struct ErrorTable {
  struct Row {
    int n;
    std::vector<double> values;  // aligned with `columns`
  };
  ErrorMetric metric = ErrorMetric::exact;
  std::vector<int> columns;  // iteration indices k
  std::vector<Row> rows;

  const Row* row(int n) const {
    for (const auto& r : rows)
      if (r.n == n) return &r;
    return nullptr;
  }
};

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

/// error_k for k = 1..K (index k-1 of the result).
inline std::vector<double> error_sequence(const Trajectory& traj, const BeamProblem& problem, ErrorMetric metric) {
  std::vector<double> out;
  if (traj.states.empty()) return out;
  std::vector<double> exact;
  if (metric == ErrorMetric::exact) {
    if (!problem.exact) throw std::invalid_argument("error against the exact solution needs an exact solution");
    const Grid& g = traj.states.front().u.grid();
    exact.resize(g.size());
    for (int i = 0; i <= g.n(); ++i) exact[i] = problem.exact->u(g.node(i));
  }
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const auto& u = traj.states[k].u;
    const auto& ref = metric == ErrorMetric::exact ? std::span<const double>(exact) : traj.states[k - 1].u.values();
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) worst = std::max(worst, std::abs(u[i] - ref[i]));
    out.push_back(worst);
  }
  return out;
}

inline const std::vector<int>& default_table_columns() {
  static const std::vector<int> cols{1, 2, 3, 4, 5, 7, 9};
  return cols;
}

/// The published error table for the built-in test problem (n = 10, 20).
/// Its values agree with successive differences of iterates to about three
/// significant digits; they do not agree with the error against u.
inline ErrorTable published_table1() {
  ErrorTable t;
  t.metric = ErrorMetric::increment;
  t.columns = default_table_columns();
  t.rows = {{10, {0.43203, 0.16734, 0.06405, 0.02473, 0.00953, 0.00142, 0.00021}},
            {20, {0.43328, 0.16715, 0.06365, 0.02446, 0.00938, 0.00138, 0.00020}}};
  return t;
}

struct Table1Reproduction {
  ErrorTable exact_error;  // error against the exact solution
  ErrorTable increment;    // successive-iterate differences
  std::vector<Trajectory> trajectories;  // one per grid, same order as rows
};

/// Runs the built-in problem from u0 = 0 on each grid, up to the largest
/// requested iteration, and tabulates both error metrics. The grids are
/// solved concurrently; each solve is deterministic.
inline Table1Reproduction reproduce_table1(DerivativeMode mode = DerivativeMode::kernel_analytic,
                                           std::vector<int> ns = {10, 20},
                                           std::vector<int> columns = default_table_columns()) {
  if (columns.empty()) throw std::invalid_argument("no table columns requested");
  const int kmax = *std::max_element(columns.begin(), columns.end());
  if (*std::min_element(columns.begin(), columns.end()) < 1) throw std::invalid_argument("table columns start at 1");
  const BeamProblem problem = make_paper_test_problem();

  std::vector<std::future<Trajectory>> jobs;
  for (int n : ns) {
    SolverConfig cfg;
    cfg.n = n;
    cfg.max_iter = kmax;
    cfg.tol = 0.0;
    cfg.derivative_mode = mode;
    jobs.push_back(std::async(std::launch::async, [&problem, cfg] { return solve(problem, cfg); }));
  }

  Table1Reproduction out;
  out.exact_error.metric = ErrorMetric::exact;
  out.increment.metric = ErrorMetric::increment;
  out.exact_error.columns = out.increment.columns = columns;
  for (std::size_t r = 0; r < ns.size(); ++r) {
    out.trajectories.push_back(jobs[r].get());
    const auto& traj = out.trajectories.back();
    const auto ex = error_sequence(traj, problem, ErrorMetric::exact);
    const auto inc = error_sequence(traj, problem, ErrorMetric::increment);
    ErrorTable::Row ex_row{ns[r], {}}, inc_row{ns[r], {}};
    for (int k : columns) {
      ex_row.values.push_back(ex.at(k - 1));
      inc_row.values.push_back(inc.at(k - 1));
    }
    out.exact_error.rows.push_back(std::move(ex_row));
    out.increment.rows.push_back(std::move(inc_row));
  }
  return out;
}

/// Renders a table in the "n \ error | error 1 | ..." layout.
inline void print_table(std::ostream& os, const ErrorTable& t, const std::string& title) {
  os << title << "\n";
  os << std::left << std::setw(10) << "n \\ error";
  for (int k : t.columns) os << std::right << std::setw(10) << ("error " + std::to_string(k));
  os << "\n";
  for (const auto& r : t.rows) {
    os << std::left << std::setw(10) << ("n = " + std::to_string(r.n));
    for (double v : r.values) os << std::right << std::setw(10) << std::fixed << std::setprecision(5) << v;
    os << "\n";
  }
  os << std::defaultfloat;
}

/// metric,n,k,value[,published]
inline void write_table_csv(std::ostream& os, const std::vector<ErrorTable>& tables, const ErrorTable* published) {
  os << "metric,n,k,value" << (published ? ",published" : "") << "\n";
  for (const auto& t : tables) {
    for (const auto& r : t.rows) {
      const auto* pub = published ? published->row(r.n) : nullptr;
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        os << to_string(t.metric) << "," << r.n << "," << t.columns[c] << "," << format_double(r.values[c]);
        if (published) {
          os << ",";
          if (pub && c < pub->values.size() && published->columns[c] == t.columns[c])
            os << format_double(pub->values[c]);
        }
        os << "\n";
      }
    }
  }
}

/// k,x,u[,u_exact] -- one row per (iterate, node).
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const BeamProblem& problem) {
  const bool with_exact = problem.exact.has_value();
  os << "k,x,u" << (with_exact ? ",u_exact" : "") << "\n";
  for (const auto& st : traj.states) {
    const Grid& g = st.u.grid();
    for (int i = 0; i <= g.n(); ++i) {
      const double x = g.node(i);
      os << st.k << "," << format_double(x) << "," << format_double(st.u[i]);
      if (with_exact) os << "," << format_double(problem.exact->u(x));
      os << "\n";
    }
  }
}

struct CsvTrajectory {
  std::vector<int> k;
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> u_exact;  // empty when the column is absent
};

inline CsvTrajectory read_trajectory_csv(std::istream& is) {
  CsvTrajectory out;
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty trajectory CSV");
  if (line.ends_with('\r')) line.pop_back();
  const bool with_exact = line == "k,x,u,u_exact";
  if (!with_exact && line != "k,x,u") throw IoError("unexpected trajectory CSV header: " + line);
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.ends_with('\r')) line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    for (;;) {
      const auto c = rest.find(',');
      fields.push_back(rest.substr(0, c));
      if (c == std::string_view::npos) break;
      rest = rest.substr(c + 1);
    }
    if (fields.size() != (with_exact ? 4u : 3u)) throw IoError("wrong field count on CSV line " + std::to_string(line_no));
    auto num = [&](std::string_view f, auto& out_v) {
      const auto r = std::from_chars(f.data(), f.data() + f.size(), out_v);
      if (r.ec != std::errc() || r.ptr != f.data() + f.size())
        throw IoError("malformed number on CSV line " + std::to_string(line_no));
    };
    int k = 0;
    double x = 0.0, u = 0.0, ue = 0.0;
    num(fields[0], k);
    num(fields[1], x);
    num(fields[2], u);
    out.k.push_back(k);
    out.x.push_back(x);
    out.u.push_back(u);
    if (with_exact) {
      num(fields[3], ue);
      out.u_exact.push_back(ue);
    }
  }
  return out;
}

/// gnuplot script drawing every iterate of `csv_path` and, when present,
/// the exact solution.
inline void write_plot_script(std::ostream& os, const std::string& csv_path, int last_k, bool with_exact,
                              const std::string& title) {
  os << "# gnuplot script: iterates u_0..u_" << last_k << (with_exact ? " against the exact solution" : "") << "\n";
  os << "# data: " << csv_path << " (columns k,x,u" << (with_exact ? ",u_exact" : "") << ")\n";
  os << "set datafile separator ','\n";
  os << "set title '" << title << "'\n";
  os << "set xlabel 'x'\nset ylabel 'u'\nset key outside right\nset grid\n";
  os << "data = '" << csv_path << "'\n";
  os << "plot for [k=0:" << last_k << "] data skip 1 using 2:($1==k ? $3 : 1/0) with linespoints pt 7 ps 0.6 "
     << "title sprintf('u_%d', k)";
  if (with_exact) os << ", \\\n     data skip 1 using 2:($1==0 ? $4 : 1/0) with lines lw 3 dt 2 title 'exact'";
  os << "\n";
  os << "pause mouse close\n";
}

/// Human-readable rendering of the assumption report.
inline void render_report(std::ostream& os, const AssumptionReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("undefined"); };
  const char* label = r.assumptions_global ? "" : " (formal)";
  os << "load assumptions hold globally: " << (r.assumptions_global ? "yes" : "no") << "\n";
  os << "omega" << label << " = " << format_double(r.omega) << "\n";
  os << "omega, (2/pi)-grouped variant = " << format_double(r.omega_alt);
  if (r.omega != r.omega_alt) os << "  [differs from omega; omega is the one used]";
  os << "\n";
  os << "c1" << label << " = " << opt(r.c1) << "\n";
  os << "c0" << label << " = " << format_double(r.c0) << "\n";
  os << "c2" << label << " = " << opt(r.c2) << "\n";
  os << "q" << label << " = " << opt(r.q) << "\n";
  os << "||u0||_1 = " << format_double(r.u0_h1) << "\n";
  os << "verdict: omega > 0: " << (r.omega_positive ? "yes" : "NO (length/growth restriction violated)") << "\n";
  if (r.omega_positive) {
    os << "verdict: ||u0||_1 <= c1: " << (r.u0_within_c1 ? "yes" : "no") << "\n";
    os << "verdict: q < 1: " << (r.q_contractive ? "yes" : "no") << "\n";
  }
  os << "hypotheses certified: " << (r.hypotheses_certified ? "yes" : "no") << "\n";
  os << "convergence certified: " << (r.convergence_certified() ? "yes" : "no") << "\n";
}

}  // namespace kirchhoff
