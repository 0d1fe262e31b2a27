#pragma once

// Picard iteration for the integral form of the beam problem:
//
//   u_{k+1}(x) = int_0^l G_k(x, xi) f(xi, u_k(xi), u_k'(xi)) dxi,
//   G_k = G( . , . ; a = tau_k),   tau_k = m( int_0^l u_k'^2 dx ).
//
// The xi-integral uses the trapezoid rule on the solution grid, so the
// kernel's diagonal kink always sits on a node.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kirchhoff/errors.hpp"
#include "kirchhoff/green_kernel.hpp"
#include "kirchhoff/grid.hpp"
#include "kirchhoff/problem.hpp"

namespace kirchhoff {

enum class DerivativeMode {
  kernel_analytic,    // u'_{k+1} = int dG_k/dx f dxi
  finite_difference,  // u'_{k+1} = discrete_derivative(u_{k+1})
};

inline std::string_view to_string(DerivativeMode m) {
  return m == DerivativeMode::kernel_analytic ? "kernel-analytic" : "finite-difference";
}

inline std::optional<DerivativeMode> parse_derivative_mode(std::string_view s) {
  if (s == "kernel-analytic") return DerivativeMode::kernel_analytic;
  if (s == "finite-difference") return DerivativeMode::finite_difference;
  return std::nullopt;
}

struct SolverConfig {
  int n = 10;
  int max_iter = 9;
  double tol = 0.0;  // stop once ||u_{k+1} - u_k||_1 <= tol; 0 disables
  DerivativeMode derivative_mode = DerivativeMode::kernel_analytic;

  void validate() const {
    if (n < 2) throw std::invalid_argument("solver needs n >= 2");
    if (max_iter < 1) throw std::invalid_argument("solver needs max_iter >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("solver tolerance must be nonnegative");
  }
};

struct IterationState {
  int k = 0;
  DiscreteFunction u;
  DiscreteFunction du;
  double tau = 0.0;
  std::optional<double> h1_diff;  // ||u_k - u_{k-1}||_1, absent for k = 0
};

struct Trajectory {
  std::vector<IterationState> states;
  std::vector<std::string> warnings;
};

/// m( int du^2 ).
inline double tau_of(const DiscreteFunction& du, const StiffnessFunction& stiffness) {
  std::vector<double> sq(du.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = du[i] * du[i];
  return stiffness(trapezoid(sq, du.grid().h()));
}

/// State for k = 0. Defaults to u0 = 0. When `c1` is given and ||u0||_1
/// exceeds it, a warning is appended to `warnings` (if provided).
inline IterationState initial_state(const BeamProblem& problem, const SolverConfig& config,
                                    const std::optional<DiscreteFunction>& u0 = std::nullopt,
                                    std::optional<double> c1 = std::nullopt,
                                    std::vector<std::string>* warnings = nullptr) {
  config.validate();
  const Grid grid(config.n, problem.length_l);
  DiscreteFunction u(grid);
  if (u0) {
    if (!(u0->grid() == grid)) throw std::invalid_argument("initial approximation is on a different grid");
    if ((*u0)[0] != 0.0 || (*u0)[grid.n()] != 0.0)
      throw std::invalid_argument("initial approximation must vanish at both ends");
    u = *u0;
  }
  DiscreteFunction du = discrete_derivative(u);
  const double tau = tau_of(du, problem.stiffness);
  if (c1 && warnings) {
    const double norm = seminorm(u, 1);
    if (norm > *c1) {
      std::ostringstream os;
      os << "initial approximation has ||u0||_1 = " << norm << " > c1 = " << *c1
         << "; the uniform iterate bound is not guaranteed";
      warnings->push_back(os.str());
    }
  }
  return IterationState{0, std::move(u), std::move(du), tau, std::nullopt};
}

/// One Picard step.
inline IterationState picard_step(const IterationState& state, const BeamProblem& problem,
                                  const SolverConfig& config) {
  const Grid& grid = state.u.grid();
  const int n = grid.n();
  const auto x = grid.nodes();
  const auto w = grid.weights();

  std::vector<double> load(grid.size());
  for (int i = 0; i <= n; ++i) {
    load[i] = problem.force(x[i], state.u[i], state.du[i]);
    if (!std::isfinite(load[i])) {
      std::ostringstream os;
      os << "non-finite load f = " << load[i] << " at node " << i << " (x = " << x[i] << ", u = " << state.u[i]
         << ", u' = " << state.du[i] << ") in iteration " << state.k + 1;
      throw NumericalError(os.str());
    }
  }

  const KernelParams params(state.tau, problem.length_l);
  DiscreteFunction u(grid);
  for (int i = 0; i <= n; ++i) {
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += w[j] * kernel(x[i], x[j], params) * load[j];
    u[i] = acc;
  }
  DiscreteFunction du(grid);
  if (config.derivative_mode == DerivativeMode::kernel_analytic) {
    for (int i = 0; i <= n; ++i) {
      double acc = 0.0;
      for (int j = 0; j <= n; ++j) acc += w[j] * kernel_dx(x[i], x[j], params) * load[j];
      du[i] = acc;
    }
  } else {
    du = discrete_derivative(u);
  }

  const double tau = tau_of(du, problem.stiffness);
  const double diff = seminorm(u - state.u, 1);
  if (!std::isfinite(tau) || !std::isfinite(diff)) {
    std::ostringstream os;
    os << "iteration " << state.k + 1 << " produced non-finite values (tau = " << tau << ")";
    throw NumericalError(os.str());
  }
  return IterationState{state.k + 1, std::move(u), std::move(du), tau, diff};
}

/// Runs picard_step until max_iter or until h1_diff <= tol (tol > 0).
/// Returns every iterate, u_0 included.
inline Trajectory solve(const BeamProblem& problem, const SolverConfig& config,
                        const std::optional<DiscreteFunction>& u0 = std::nullopt,
                        std::optional<double> c1 = std::nullopt) {
  config.validate();
  Trajectory traj;
  traj.states.push_back(initial_state(problem, config, u0, c1, &traj.warnings));
  int growth_streak = 0;
  bool warned = false;
  for (int k = 0; k < config.max_iter; ++k) {
    traj.states.push_back(picard_step(traj.states.back(), problem, config));
    const auto& cur = traj.states.back();
    const auto& prev = traj.states[traj.states.size() - 2];
    if (prev.h1_diff && *cur.h1_diff > *prev.h1_diff) {
      if (++growth_streak >= 3 && !warned) {
        std::ostringstream os;
        os << "iteration is not contracting: ||u_k - u_{k-1}||_1 grew for 3 consecutive steps (k = " << cur.k
           << ")";
        traj.warnings.push_back(os.str());
        warned = true;
      }
    } else {
      growth_streak = 0;
    }
    if (config.tol > 0.0 && *cur.h1_diff <= config.tol) break;
  }
  return traj;
}

}  // namespace kirchhoff
