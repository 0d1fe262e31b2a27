#pragma once

// Problem data for the static Kirchhoff beam
//
//   u'''' - m( int_0^l u'^2 dx ) u'' = f(x, u, u'),   0 < x < l,
//   u(0) = u(l) = u''(0) = u''(l) = 0,
//
// together with the bound and Lipschitz data on m and f that the
// convergence analysis consumes.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kirchhoff {

/// Nonlocal stiffness coefficient m(z), z = int u'^2 >= 0.
///
/// `alpha` is a lower bound of m on [0, inf) and `lipschitz_l1` a
/// Lipschitz constant. For the affine law m(z) = m0 + m1 z both are tight:
/// alpha = m0, l1 = m1.
struct StiffnessFunction {
  std::function<double(double)> evaluator;
  double alpha = 1.0;
  double lipschitz_l1 = 0.0;
  std::optional<std::pair<double, double>> affine;  // (m0, m1)

  double operator()(double z) const { return evaluator(z); }
};

/// Scalar growth and Lipschitz data of the load:
///   |f(x,u,v)| <= s1(x) + sigma2_inf |u| + sigma3_inf |v|,  ||s1||_L2 = sigma1_norm
///   |f(x,u2,v2) - f(x,u1,v1)| <= l2_inf |u2-u1| + l3_inf |v2-v1|
struct ForceBounds {
  double sigma1_norm = 0.0;
  double sigma2_inf = 0.0;
  double sigma3_inf = 0.0;
  double l2_inf = 0.0;
  double l3_inf = 0.0;
};

/// Load f(x, u, v) where v stands for u'.
///
/// When `assumptions_global` is false the bounds only hold on the range of
/// the solution (or are not known to hold at all); the analysis then treats
/// every derived constant as formal.
struct ForceFunction {
  std::function<double(double, double, double)> evaluator;
  ForceBounds bounds;
  bool assumptions_global = false;

  double operator()(double x, double u, double v) const { return evaluator(x, u, v); }
};

/// Manufactured exact solution u(x) and its derivative u'(x).
struct ExactSolution {
  std::function<double(double)> u;
  std::function<double(double)> du;
};

struct BeamProblem {
  double length_l = 1.0;
  StiffnessFunction stiffness;
  ForceFunction force;
  std::optional<ExactSolution> exact;
};

namespace sampling {

// z-grid used to sample-check m: {0, 0.1, ..., 10}.
inline std::vector<double> stiffness_grid() {
  std::vector<double> z(101);
  for (int i = 0; i <= 100; ++i) z[i] = 0.1 * i;
  return z;
}

// (u, v) samples in [-2, 2] x [-2, 2] with step 0.5.
inline std::vector<double> state_grid() {
  std::vector<double> s(9);
  for (int i = 0; i <= 8; ++i) s[i] = -2.0 + 0.5 * i;
  return s;
}

inline constexpr int kForceXIntervals = 64;

// Relative slack for the sampled L2 norm of the growth remainder; covers the
// quadrature error of the 64-interval x-grid.
inline constexpr double kSigma1Slack = 0.01;

inline constexpr double kAbsTol = 1e-12;

}  // namespace sampling

/// Checks m(z) >= alpha and the Lipschitz bound on the sampled z-grid.
/// Returns an empty string when both hold, otherwise a diagnostic.
inline std::string check_stiffness_samples(const StiffnessFunction& m) {
  const auto z = sampling::stiffness_grid();
  std::vector<double> mz(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    mz[i] = m(z[i]);
    if (!std::isfinite(mz[i]) || mz[i] < m.alpha - sampling::kAbsTol) {
      std::ostringstream os;
      os << "stiffness m(" << z[i] << ") = " << mz[i] << " is below alpha = " << m.alpha;
      return os.str();
    }
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double lhs = std::abs(mz[j] - mz[i]);
      const double rhs = m.lipschitz_l1 * std::abs(z[j] - z[i]);
      if (lhs > rhs + sampling::kAbsTol * (1.0 + std::abs(mz[i]))) {
        std::ostringstream os;
        os << "stiffness violates Lipschitz bound l1 = " << m.lipschitz_l1 << " between z = " << z[i]
           << " and z = " << z[j];
        return os.str();
      }
    }
  }
  return {};
}

/// Sample-checks the growth and Lipschitz inequalities of a load on
/// [0, length] x [-2,2]^2. Returns an empty string when they hold.
///
/// For the growth bound, the pointwise remainder
///   r(x) = max_{u,v} max(0, |f| - sigma2 |u| - sigma3 |v|)
/// is the smallest admissible s1 on the samples; its trapezoid L2 norm must
/// not exceed sigma1_norm (with kSigma1Slack).
inline std::string check_force_samples(const ForceFunction& f, double length) {
  const auto s = sampling::state_grid();
  const int nx = sampling::kForceXIntervals;
  const double h = length / nx;
  const auto& b = f.bounds;
  double r_sq_integral = 0.0;
  std::vector<double> fv(s.size() * s.size());
  for (int ix = 0; ix <= nx; ++ix) {
    const double x = ix * h;
    double r = 0.0;
    for (std::size_t iu = 0; iu < s.size(); ++iu) {
      for (std::size_t iv = 0; iv < s.size(); ++iv) {
        const double val = f(x, s[iu], s[iv]);
        if (!std::isfinite(val)) {
          std::ostringstream os;
          os << "load is not finite at (x, u, v) = (" << x << ", " << s[iu] << ", " << s[iv] << ")";
          return os.str();
        }
        fv[iu * s.size() + iv] = val;
        r = std::max(r, std::abs(val) - b.sigma2_inf * std::abs(s[iu]) - b.sigma3_inf * std::abs(s[iv]));
      }
    }
    const double w = (ix == 0 || ix == nx) ? 0.5 * h : h;
    r_sq_integral += w * r * r;

    for (std::size_t p = 0; p < fv.size(); ++p) {
      for (std::size_t q = p + 1; q < fv.size(); ++q) {
        const double du = std::abs(s[q / s.size()] - s[p / s.size()]);
        const double dv = std::abs(s[q % s.size()] - s[p % s.size()]);
        const double lhs = std::abs(fv[q] - fv[p]);
        const double rhs = b.l2_inf * du + b.l3_inf * dv;
        if (lhs > rhs + sampling::kAbsTol * (1.0 + std::abs(fv[p]))) {
          std::ostringstream os;
          os << "load violates Lipschitz bounds (l2 = " << b.l2_inf << ", l3 = " << b.l3_inf << ") at x = " << x
             << " between (u, v) = (" << s[p / s.size()] << ", " << s[p % s.size()] << ") and ("
             << s[q / s.size()] << ", " << s[q % s.size()] << ")";
          return os.str();
        }
      }
    }
  }
  const double r_norm = std::sqrt(r_sq_integral);
  if (r_norm > b.sigma1_norm * (1.0 + sampling::kSigma1Slack) + sampling::kAbsTol) {
    std::ostringstream os;
    os << "load violates growth bound: sampled ||sigma1|| >= " << r_norm << " exceeds declared " << b.sigma1_norm;
    return os.str();
  }
  return {};
}

/// Affine stiffness m(z) = m0 + m1 z.
inline StiffnessFunction make_affine_stiffness(double m0, double m1) {
  if (!(m0 > 0.0)) throw std::invalid_argument("affine stiffness requires m0 > 0");
  if (!(m1 >= 0.0)) throw std::invalid_argument("affine stiffness requires m1 >= 0");
  StiffnessFunction m;
  m.evaluator = [m0, m1](double z) { return m0 + m1 * z; };
  m.alpha = m0;
  m.lipschitz_l1 = m1;
  m.affine = std::make_pair(m0, m1);
  return m;
}

/// General stiffness law; the declared bounds are sample-checked.
inline StiffnessFunction make_stiffness(std::function<double(double)> evaluator, double alpha,
                                        double lipschitz_l1) {
  if (!(alpha > 0.0)) throw std::invalid_argument("stiffness lower bound alpha must be positive");
  if (!(lipschitz_l1 >= 0.0)) throw std::invalid_argument("stiffness Lipschitz constant must be nonnegative");
  StiffnessFunction m{std::move(evaluator), alpha, lipschitz_l1, std::nullopt};
  if (auto msg = check_stiffness_samples(m); !msg.empty()) throw std::invalid_argument(msg);
  return m;
}

inline ForceFunction make_force(std::function<double(double, double, double)> evaluator, ForceBounds bounds,
                                bool assumptions_global) {
  for (double b : {bounds.sigma1_norm, bounds.sigma2_inf, bounds.sigma3_inf, bounds.l2_inf, bounds.l3_inf}) {
    if (!(b >= 0.0)) throw std::invalid_argument("load bounds must be nonnegative");
  }
  return ForceFunction{std::move(evaluator), bounds, assumptions_global};
}

/// Assembles a problem. Loads declared global are sample-checked here,
/// because the x-range is only known once the length is.
inline BeamProblem make_problem(double length, StiffnessFunction stiffness, ForceFunction force,
                                std::optional<ExactSolution> exact = std::nullopt) {
  if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("beam length must be positive");
  if (!stiffness.evaluator) throw std::invalid_argument("stiffness evaluator is empty");
  if (!force.evaluator) throw std::invalid_argument("load evaluator is empty");
  if (exact) {
    if (!exact->u || !exact->du) throw std::invalid_argument("exact solution needs both u and u'");
    const double u0 = exact->u(0.0);
    const double ul = exact->u(length);
    if (std::abs(u0) > 1e-12 || std::abs(ul) > 1e-12) {
      std::ostringstream os;
      os << "exact solution must vanish at both ends: u(0) = " << u0 << ", u(l) = " << ul;
      throw std::invalid_argument(os.str());
    }
  }
  if (force.assumptions_global) {
    if (auto msg = check_force_samples(force, length); !msg.empty()) throw std::invalid_argument(msg);
  }
  return BeamProblem{length, std::move(stiffness), std::move(force), std::move(exact)};
}

/// The manufactured test case: l = 1, m(z) = 1 + z/2,
///   f = (43.5 v^2 - 348 x^3 v - 1566 u + 696 x^6 - 3132 x^3 + 2088 x + 796.5) / 35,
/// exact solution u = x^4 - 2x^3 + x.
///
/// The v^2 term rules out a global linear growth bound, so the load is marked
/// non-global. The stored bounds are local ones, valid for |v| <= 1 (the range
/// of u' on [0,1]); they only feed the formal constants.
inline BeamProblem make_paper_test_problem() {
  auto m = make_affine_stiffness(1.0, 0.5);
  ForceBounds b;
  // L2 norm on [0,1] of the x-only part (696x^6 - 3132x^3 + 2088x + 796.5)/35,
  // in closed form 3 sqrt(2651278045) / 4550.
  b.sigma1_norm = 33.949821546593230;
  b.sigma2_inf = 1566.0 / 35.0;
  b.sigma3_inf = (43.5 + 348.0) / 35.0;
  b.l2_inf = 1566.0 / 35.0;
  b.l3_inf = (2.0 * 43.5 + 348.0) / 35.0;
  auto f = make_force(
      [](double x, double u, double v) {
        const double x3 = x * x * x;
        return (43.5 * v * v - 348.0 * x3 * v - 1566.0 * u + 696.0 * x3 * x3 - 3132.0 * x3 + 2088.0 * x + 796.5) /
               35.0;
      },
      b, false);
  ExactSolution exact{
      [](double x) { return x * x * x * x - 2.0 * x * x * x + x; },
      [](double x) { return 4.0 * x * x * x - 6.0 * x * x + 1.0; },
  };
  return make_problem(1.0, std::move(m), std::move(f), std::move(exact));
}

}  // namespace kirchhoff
