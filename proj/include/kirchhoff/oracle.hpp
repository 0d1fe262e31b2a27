#pragma once

// Independent reference solvers. None of them goes through the closed-form
// kernel, so they can cross-check it:
//
//  * fd_linear_solve   - central differences for v'''' - a v'' = psi with hinged
//                        ends, solved as a banded pentadiagonal system;
//  * two_stage_solve   - w'' - a w = psi, w(0) = w(l) = 0 followed by v'' = w,
//                        v(0) = v(l) = 0, each by its own second-order kernel
//                        and the trapezoid rule;
//  * residual          - discrete residual of the full nonlinear equation.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kirchhoff/grid.hpp"
#include "kirchhoff/green_kernel.hpp"
#include "kirchhoff/picard.hpp"
#include "kirchhoff/problem.hpp"

namespace kirchhoff {

struct LinearProblem {
  double a;
  double l;
  std::function<double(double)> psi;

  LinearProblem(double a_, double l_, std::function<double(double)> psi_) : a(a_), l(l_), psi(std::move(psi_)) {
    if (!(a > 0.0)) throw std::invalid_argument("linear problem needs a > 0");
    if (!(l > 0.0)) throw std::invalid_argument("linear problem needs l > 0");
  }
};

/// Solves a symmetric banded system with half-bandwidth 2 by Gaussian
/// elimination without pivoting (the matrices here are SPD). `bands[d][i]`
/// holds A(i, i+d) for d = 0, 1, 2. Accumulates in long double: the
/// biharmonic matrix has condition number ~ n^4.
template <class Real>
std::vector<double> solve_pentadiagonal(const std::array<std::vector<Real>, 3>& bands, const std::vector<Real>& rhs) {
  const std::size_t m = rhs.size();
  if (bands[0].size() != m) throw std::invalid_argument("band size mismatch");
  // Full 5-band storage in long double: row i, columns i-2..i+2.
  std::vector<std::array<long double, 5>> A(m);
  std::vector<long double> b(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < m; ++i) {
    A[i].fill(0.0L);
    A[i][2] = bands[0][i];
    if (i + 1 < m) A[i][3] = bands[1][i];
    if (i + 2 < m) A[i][4] = bands[2][i];
    if (i >= 1) A[i][1] = bands[1][i - 1];
    if (i >= 2) A[i][0] = bands[2][i - 2];
  }
  for (std::size_t k = 0; k < m; ++k) {
    const long double piv = A[k][2];
    if (piv == 0.0L || !std::isfinite(static_cast<double>(piv)))
      throw std::runtime_error("pentadiagonal system is singular");
    for (std::size_t r = 1; r <= 2 && k + r < m; ++r) {
      // Row k+r, column k sits at offset 2 - r.
      const long double factor = A[k + r][2 - r] / piv;
      if (factor == 0.0L) continue;
      for (std::size_t c = 0; c <= 2 && k + c < m; ++c) A[k + r][2 - r + c] -= factor * A[k][2 + c];
      b[k + r] -= factor * b[k];
    }
  }
  std::vector<double> x(m);
  std::vector<long double> xl(m);
  for (std::size_t k = m; k-- > 0;) {
    long double acc = b[k];
    if (k + 1 < m) acc -= A[k][3] * xl[k + 1];
    if (k + 2 < m) acc -= A[k][4] * xl[k + 2];
    xl[k] = acc / A[k][2];
    x[k] = static_cast<double>(xl[k]);
  }
  return x;
}

/// Solves the symmetric tridiagonal Toeplitz system tridiag(off, diag, off) x = rhs.
inline std::vector<long double> solve_tridiagonal(long double diag, long double off, std::vector<long double> rhs) {
  const std::size_t m = rhs.size();
  std::vector<long double> c(m);
  long double piv = diag;
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) {
      piv = diag - off * c[i - 1];
      rhs[i] -= off * rhs[i - 1];
    }
    if (piv == 0.0L) throw std::runtime_error("tridiagonal system is singular");
    c[i] = off / piv;
    rhs[i] /= piv;
  }
  for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
  return rhs;
}

/// Pentadiagonal matrix of the hinged finite-difference scheme, scaled by h^4:
/// diagonal 6 + 2 a h^2 (5 + 2 a h^2 in the end rows), first off-diagonal
/// -4 - a h^2, second off-diagonal 1.
inline std::array<std::vector<double>, 3> fd_bands(double a, double h, int n) {
  const std::size_t m = static_cast<std::size_t>(n) - 1;
  const double ah2 = a * h * h;
  std::array<std::vector<double>, 3> bands{std::vector<double>(m, 6.0 + 2.0 * ah2), std::vector<double>(m, -4.0 - ah2),
                                           std::vector<double>(m, 1.0)};
  bands[0].front() -= 1.0;
  bands[0].back() -= 1.0;
  return bands;
}

/// Second-order finite differences; the hinged condition v'' = 0 is imposed
/// through the ghost value v_{-1} = -v_1 (and v_{n+1} = -v_{n-1}). With that
/// reduction the pentadiagonal matrix of `fd_bands` is exactly T (T + a h^2 I),
/// T = tridiag(-1, 2, -1), and it is eliminated through those two factors:
/// the assembled matrix has condition number ~ n^4 and loses the O(h^2) signal
/// to rounding near n = 2000 even in long double, while each factor is ~ n^2.
inline DiscreteFunction fd_linear_solve(const LinearProblem& lp, int n) {
  if (n < 4) throw std::invalid_argument("finite-difference oracle needs n >= 4");
  const Grid grid(n, lp.l);
  const long double h = static_cast<long double>(lp.l) / n;
  const std::size_t m = static_cast<std::size_t>(n) - 1;  // unknowns v_1..v_{n-1}
  std::vector<long double> rhs(m);
  const long double h4 = h * h * h * h;
  for (std::size_t i = 0; i < m; ++i) rhs[i] = h4 * lp.psi(grid.node(static_cast<int>(i) + 1));
  const auto z = solve_tridiagonal(2.0L, -1.0L, std::move(rhs));
  const auto interior = solve_tridiagonal(2.0L + lp.a * h * h, -1.0L, z);
  DiscreteFunction v(grid);
  for (std::size_t i = 0; i < m; ++i) v[i + 1] = static_cast<double>(interior[i]);
  return v;
}

/// Kernel of -w'' + a w = delta on [0, l] with w = 0 at both ends.
inline double screened_string_kernel(double x, double xi, double a, double l) {
  const double lo = std::min(x, xi);
  const double hi = std::max(x, xi);
  const double s = std::sqrt(a);
  return stable_sinh_ratio(s * (l - hi), s * lo, s * l) / s;
}

/// Kernel of -v'' = delta on [0, l] with v = 0 at both ends.
inline double string_kernel(double x, double xi, double l) {
  const double lo = std::min(x, xi);
  const double hi = std::max(x, xi);
  return (l - hi) * lo / l;
}

/// w = -int K_a psi, then v = -int K_0 w.
inline DiscreteFunction two_stage_solve(const LinearProblem& lp, int n) {
  if (n < 4) throw std::invalid_argument("two-stage oracle needs n >= 4");
  const Grid grid(n, lp.l);
  const auto x = grid.nodes();
  const auto wts = grid.weights();
  std::vector<double> psi(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) psi[j] = lp.psi(x[j]);
  std::vector<double> w(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += wts[j] * screened_string_kernel(x[i], x[j], lp.a, lp.l) * psi[j];
    w[i] = -acc;
  }
  DiscreteFunction v(grid);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += wts[j] * string_kernel(x[i], x[j], lp.l) * w[j];
    v[i] = -acc;
  }
  return v;
}

/// Trapezoid application of the closed-form kernel, int G(x_i, xi) psi(xi) dxi.
inline DiscreteFunction kernel_quadrature_solve(const LinearProblem& lp, int n) {
  const Grid grid(n, lp.l);
  const KernelParams params(lp.a, lp.l);
  const auto x = grid.nodes();
  const auto wts = grid.weights();
  std::vector<double> psi(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) psi[j] = lp.psi(x[j]);
  DiscreteFunction v(grid);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += wts[j] * kernel(x[i], x[j], params) * psi[j];
    v[i] = acc;
  }
  return v;
}

/// max over nodes 2..n-2 of |D4 u - m(int (Du)^2) D2 u - f(x, u, Du)|, with
/// central stencils and Du = discrete_derivative(u).
inline double residual(const BeamProblem& problem, const DiscreteFunction& u) {
  const Grid& grid = u.grid();
  const int n = grid.n();
  if (n < 4) throw std::invalid_argument("residual needs n >= 4");
  const double h = grid.h();
  const DiscreteFunction du = discrete_derivative(u);
  const double tau = tau_of(du, problem.stiffness);
  double worst = 0.0;
  for (int i = 2; i <= n - 2; ++i) {
    const double d4 = (u[i - 2] - 4.0 * u[i - 1] + 6.0 * u[i] - 4.0 * u[i + 1] + u[i + 2]) / (h * h * h * h);
    const double d2 = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h * h);
    worst = std::max(worst, std::abs(d4 - tau * d2 - problem.force(grid.node(i), u[i], du[i])));
  }
  return worst;
}

}  // namespace kirchhoff
