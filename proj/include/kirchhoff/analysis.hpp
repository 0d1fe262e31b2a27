#pragma once

// Constants of the a priori convergence analysis.
//
//   omega = alpha + (pi/l)^2 - (l/pi)^2 ||s2||_inf - (l/pi) ||s3||_inf     hypothesis margin
//   c1    = l / (omega pi) ||s1||                                          bound on ||u||_1
//   c0    = ( 1 + omega / ((l/pi)^2 ||s2||_inf + (l/pi) ||s3||_inf) )^{-1}
//   c2    = c1                                  if ||s2||_inf + ||s3||_inf = 0
//         = c1 + c0 max(0, ||u0||_1 - c1)       otherwise                  bound on ||u_k||_1
//   q     = (l/pi)^2 / (alpha + (pi/l)^2) * ( 2 l1 (||s1||/omega)^2 + ||l2||_inf + (pi/l) ||l3||_inf )
//
// and, when q < 1, ||u_k - u||_p <= (l/pi)^{1-p} q^k ||u0 - u||_1, p = 0, 1.
//
// omega uses the (l/pi)^2 weight on ||s2||_inf that the energy estimate for
// ||u||_1 actually produces. The alternative grouping
// (l/pi) ((2/pi) ||s2||_inf + ||s3||_inf) is reported as `omega_alt` so the
// two can be compared; they coincide when ||s2||_inf = 0 or l = 2.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "kirchhoff/problem.hpp"

namespace kirchhoff {

struct AssumptionReport {
  double omega = 0.0;
  double omega_alt = 0.0;
  std::optional<double> c1;  // defined when omega > 0
  double c0 = 0.0;
  std::optional<double> c2;
  std::optional<double> q;
  double u0_h1 = 0.0;
  bool omega_positive = false;
  bool q_contractive = false;
  bool assumptions_global = false;
  bool u0_within_c1 = false;
  bool hypotheses_certified = false;  // global data, omega > 0, ||u0||_1 <= c1

  /// The error bound is certified only if the hypotheses hold and q < 1.
  bool convergence_certified() const { return hypotheses_certified && q_contractive; }
};

namespace detail {

struct LengthScales {
  double r;           // l / pi
  double base;        // alpha + (pi/l)^2
};

inline LengthScales scales(const BeamProblem& p) {
  const double r = p.length_l / std::numbers::pi;
  return {r, p.stiffness.alpha + 1.0 / (r * r)};
}

// (l/pi)^2 ||s2||_inf + (l/pi) ||s3||_inf
inline double growth_weight(const BeamProblem& p) {
  const double r = p.length_l / std::numbers::pi;
  return r * r * p.force.bounds.sigma2_inf + r * p.force.bounds.sigma3_inf;
}

}  // namespace detail

inline double omega(const BeamProblem& problem) {
  return detail::scales(problem).base - detail::growth_weight(problem);
}

/// The (2/pi)-grouped variant of omega, for comparison only.
inline double omega_alt(const BeamProblem& problem) {
  const auto [r, base] = detail::scales(problem);
  const auto& b = problem.force.bounds;
  return base - r * ((2.0 / std::numbers::pi) * b.sigma2_inf + b.sigma3_inf);
}

/// q in its closed form; nullopt when omega <= 0.
inline std::optional<double> contraction_q(const BeamProblem& problem) {
  const double w = omega(problem);
  if (!(w > 0.0)) return std::nullopt;
  const auto [r, base] = detail::scales(problem);
  const auto& b = problem.force.bounds;
  const double s1_over_w = b.sigma1_norm / w;
  return r * r / base *
         (2.0 * problem.stiffness.lipschitz_l1 * s1_over_w * s1_over_w + b.l2_inf + b.l3_inf / r);
}

/// q written through c1: (alpha + (pi/l)^2)^{-1} (2 c1^2 l1 + ||l2|| (l/pi)^2 + ||l3|| (l/pi)).
inline double contraction_q_from_c1(double alpha, double length, double c1, double l1, double l2_inf,
                                    double l3_inf) {
  const double r = length / std::numbers::pi;
  return (2.0 * c1 * c1 * l1 + l2_inf * r * r + l3_inf * r) / (alpha + 1.0 / (r * r));
}

/// Uniform bound for v_k <= a v_{k-1} + b:  b/(1-a) + a max(0, v0 - b/(1-a)).
inline double recursive_bound(double a, double b, double v0) {
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("recursive bound needs 0 <= a < 1");
  if (!(b > 0.0)) throw std::invalid_argument("recursive bound needs b > 0");
  const double fixed = b / (1.0 - a);
  return fixed + a * std::max(0.0, v0 - fixed);
}

/// (l/pi)^{1-p} q^k ||u0 - u||_1.
inline double a_priori_bound(double q, int k, int p, double e0_h1, double length) {
  if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("a priori bound needs 0 <= q < 1");
  if (k < 1) throw std::invalid_argument("a priori bound needs k >= 1");
  if (p != 0 && p != 1) throw std::invalid_argument("a priori bound is stated for p = 0, 1");
  // Repeated multiplication keeps bound(k + 1) == q * bound(k) bit for bit.
  double bound = (p == 0 ? length / std::numbers::pi : 1.0) * e0_h1;
  for (int i = 0; i < k; ++i) bound *= q;
  return bound;
}

/// All constants for `problem` and an initial guess with ||u0||_1 = u0_h1.
/// omega <= 0 is reported through the flags, never thrown.
inline AssumptionReport constants(const BeamProblem& problem, double u0_h1) {
  if (!(u0_h1 >= 0.0)) throw std::invalid_argument("||u0||_1 must be nonnegative");
  AssumptionReport rep;
  rep.omega = omega(problem);
  rep.omega_alt = omega_alt(problem);
  rep.u0_h1 = u0_h1;
  rep.assumptions_global = problem.force.assumptions_global;
  rep.omega_positive = rep.omega > 0.0;
  if (rep.omega_positive) {
    const double r = problem.length_l / std::numbers::pi;
    const double c1 = r / rep.omega * problem.force.bounds.sigma1_norm;
    const double weight = detail::growth_weight(problem);
    const auto& b = problem.force.bounds;
    rep.c1 = c1;
    rep.c0 = weight > 0.0 ? 1.0 / (1.0 + rep.omega / weight) : 0.0;
    rep.c2 = (b.sigma2_inf + b.sigma3_inf == 0.0) ? c1 : c1 + rep.c0 * std::max(0.0, u0_h1 - c1);
    rep.q = contraction_q(problem);
    rep.q_contractive = *rep.q < 1.0;
    rep.u0_within_c1 = u0_h1 <= c1;
  }
  rep.hypotheses_certified = rep.assumptions_global && rep.omega_positive && rep.u0_within_c1;
  return rep;
}

}  // namespace kirchhoff
