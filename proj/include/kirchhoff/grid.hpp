#pragma once

// Uniform grids on [0, l], composite trapezoid quadrature, second-order
// discrete derivatives and the discrete seminorms
//   ||u||_p = ( int_0^l (d^p u / dx^p)^2 dx )^{1/2},  p = 0, 1, 2.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace kirchhoff {

class Grid {
 public:
  Grid(int n, double l) : n_(n), l_(l), h_(l / n) {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 subintervals");
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("grid length must be positive");
  }

  int n() const { return n_; }
  double length() const { return l_; }
  double h() const { return h_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) + 1; }

  // x_n is pinned to l exactly.
  double node(int i) const { return i == n_ ? l_ : i * h_; }

  std::vector<double> nodes() const {
    std::vector<double> x(size());
    for (int i = 0; i <= n_; ++i) x[i] = node(i);
    return x;
  }

  /// Trapezoid weights h/2, h, ..., h, h/2.
  std::vector<double> weights() const {
    std::vector<double> w(size(), h_);
    w.front() = w.back() = 0.5 * h_;
    return w;
  }

  bool operator==(const Grid& o) const { return n_ == o.n_ && l_ == o.l_; }

 private:
  int n_;
  double l_;
  double h_;
};

/// Nodal values of a function on a grid.
class DiscreteFunction {
 public:
  explicit DiscreteFunction(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

  DiscreteFunction(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("value count must equal n + 1");
  }

  static DiscreteFunction sample(Grid grid, const std::function<double(double)>& fn) {
    std::vector<double> v(grid.size());
    for (int i = 0; i <= grid.n(); ++i) v[i] = fn(grid.node(i));
    return DiscreteFunction(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  friend DiscreteFunction operator-(const DiscreteFunction& a, const DiscreteFunction& b) {
    if (!(a.grid_ == b.grid_)) throw std::invalid_argument("grid mismatch");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] - b.values_[i];
    return DiscreteFunction(a.grid_, std::move(v));
  }

  friend bool operator==(const DiscreteFunction&, const DiscreteFunction&) = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// h (v_0/2 + v_1 + ... + v_{n-1} + v_n/2).
inline double trapezoid(std::span<const double> values, double h) {
  if (values.size() < 2) return 0.0;
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
  return h * (0.5 * (values.front() + values.back()) + interior);
}

inline double trapezoid(const DiscreteFunction& g) { return trapezoid(g.values(), g.grid().h()); }

/// Central differences inside, second-order one-sided stencils at both ends.
inline DiscreteFunction discrete_derivative(const DiscreteFunction& g) {
  const int n = g.grid().n();
  if (n < 2) throw std::invalid_argument("discrete derivative needs n >= 2");
  const double inv2h = 1.0 / (2.0 * g.grid().h());
  DiscreteFunction d(g.grid());
  d[0] = (-3.0 * g[0] + 4.0 * g[1] - g[2]) * inv2h;
  for (int i = 1; i < n; ++i) d[i] = (g[i + 1] - g[i - 1]) * inv2h;
  d[n] = (3.0 * g[n] - 4.0 * g[n - 1] + g[n - 2]) * inv2h;
  return d;
}

/// ||g||_p via p-fold discrete differentiation and the trapezoid rule.
inline double seminorm(const DiscreteFunction& g, int p) {
  if (p < 0 || p > 2) throw std::invalid_argument("seminorm order must be 0, 1 or 2");
  if (g.grid().n() < 2 * p) throw std::invalid_argument("grid too coarse for seminorm order");
  DiscreteFunction d = g;
  for (int i = 0; i < p; ++i) d = discrete_derivative(d);
  std::vector<double> sq(d.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = d[i] * d[i];
  return std::sqrt(trapezoid(sq, g.grid().h()));
}

}  // namespace kirchhoff
