#pragma once

// Green's function of
//
//   v'''' - a v'' = psi,  0 < x < l,   v = v'' = 0 at x = 0 and x = l,
//
// i.e. v(x) = int_0^l G(x, xi) psi(xi) dxi with, for xi <= x,
//
//   G(x, xi) = (1/a) [ (l - x) xi / l  -  sinh(s (l - x)) sinh(s xi) / (s sinh(s l)) ],  s = sqrt(a),
//
// and the mirrored expression for x <= xi. The operator factors as
// (-d^2)(-d^2 + a), so G is (1/a) times the difference of the string and
// the screened-string kernels. Every hyperbolic ratio goes through the
// exponentially scaled helpers below, so s l may be large (up to ~1e4 and
// beyond) without overflow.

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kirchhoff {

struct KernelParams {
  double a;  // linearised coefficient tau > 0
  double l;  // beam length

  KernelParams(double a_, double l_) : a(a_), l(l_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("kernel coefficient a must be positive");
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("kernel length l must be positive");
  }
};

namespace detail {

// 1 - e^{-2t}, accurate for small t.
inline double one_minus_exp_m2(double t) { return -std::expm1(-2.0 * t); }

inline void check_position(double x, double l, const char* name) {
  if (!(x >= 0.0 && x <= l)) {
    std::ostringstream os;
    os << "kernel argument " << name << " = " << x << " outside [0, " << l << "]";
    throw std::out_of_range(os.str());
  }
}

}  // namespace detail

/// sinh(p) sinh(q) / sinh(s) for |p|, |q| <= s, via
///   e^{|p|+|q|-s} (1 - e^{-2|p|})(1 - e^{-2|q|}) / (2 (1 - e^{-2s}))
/// with sign(p) sign(q) restored. Returns 0 when p or q is 0.
inline double stable_sinh_ratio(double p, double q, double s) {
  if (p == 0.0 || q == 0.0) return 0.0;
  const double ap = std::abs(p);
  const double aq = std::abs(q);
  const double sign = ((p < 0.0) != (q < 0.0)) ? -1.0 : 1.0;
  const double num = detail::one_minus_exp_m2(ap) * detail::one_minus_exp_m2(aq);
  return sign * std::exp(ap + aq - s) * num / (2.0 * detail::one_minus_exp_m2(s));
}

/// cosh(p) sinh(q) / sinh(s) for p >= 0, |q| <= s, scaled the same way.
inline double stable_cosh_sinh_ratio(double p, double q, double s) {
  if (q == 0.0) return 0.0;
  const double ap = std::abs(p);
  const double aq = std::abs(q);
  const double sign = q < 0.0 ? -1.0 : 1.0;
  const double num = (1.0 + std::exp(-2.0 * ap)) * detail::one_minus_exp_m2(aq);
  return sign * std::exp(ap + aq - s) * num / (2.0 * detail::one_minus_exp_m2(s));
}

/// G(x, xi). Symmetric by construction: both orderings evaluate the same
/// expression in (min, max).
inline double kernel(double x, double xi, const KernelParams& k) {
  detail::check_position(x, k.l, "x");
  detail::check_position(xi, k.l, "xi");
  const double lo = x < xi ? x : xi;
  const double hi = x < xi ? xi : x;
  const double s = std::sqrt(k.a);
  const double string_part = (k.l - hi) * lo / k.l;
  const double screened_part = stable_sinh_ratio(s * (k.l - hi), s * lo, s * k.l) / s;
  return (string_part - screened_part) / k.a;
}

/// dG/dx. At x == xi the two one-sided derivatives are averaged.
inline double kernel_dx(double x, double xi, const KernelParams& k) {
  detail::check_position(x, k.l, "x");
  detail::check_position(xi, k.l, "xi");
  const double s = std::sqrt(k.a);
  const double sl = s * k.l;
  // xi <= x branch: (1/a) [ -xi/l + cosh(s(l-x)) sinh(s xi) / sinh(s l) ]
  auto left = [&] { return (-xi / k.l + stable_cosh_sinh_ratio(s * (k.l - x), s * xi, sl)) / k.a; };
  // x <= xi branch: (1/a) [ (l-xi)/l - cosh(s x) sinh(s(l-xi)) / sinh(s l) ]
  auto right = [&] { return ((k.l - xi) / k.l - stable_cosh_sinh_ratio(s * x, s * (k.l - xi), sl)) / k.a; };
  if (xi < x) return left();
  if (x < xi) return right();
  return 0.5 * (left() + right());
}

}  // namespace kirchhoff
