#pragma once

// Quadrature, finite differences and interpolation shared by every module.
// All t-integrals in the library go through composite Simpson on uniform
// grids; derivatives without closed forms use fourth-order stencils.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace flatribbon {

/// `nodes` equispaced points covering [a, b] including both ends.
std::vector<double> uniform_grid(double a, double b, std::size_t nodes);

/// Composite Simpson over equispaced samples. An odd number of intervals is
/// closed with the 3/8 rule on the last three; two samples fall back to the
/// trapezoid.
double simpson(std::span<const double> values, double step);

/// Running integral from the first node, O(h^4) at every node.
std::vector<double> cumulative_simpson(std::span<const double> values, double step);

/// First derivative of equispaced samples with five-point stencils
/// (one-sided near the ends). Requires at least five samples.
std::vector<double> grid_derivative(std::span<const double> values, double step);

/// Fourth-order finite difference of order 1..3 of a scalar or vector valued
/// callable at t. The stencil is kept inside [lo, hi]: first derivatives use
/// one-sided formulas near the ends, higher orders shift the stencil centre.
template <class F>
auto finite_difference(const F& f, double t, double h, double lo, double hi, int order = 1)
    -> decltype(f(t)) {
  using R = decltype(f(t));
  if (order == 1) {
    if (t - 2 * h >= lo && t + 2 * h <= hi) {
      R r = f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h);
      return r / (12.0 * h);
    }
    const double s = (t - 2 * h < lo) ? h : -h;
    R r = -25.0 * f(t) + 48.0 * f(t + s) - 36.0 * f(t + 2 * s) + 16.0 * f(t + 3 * s) -
          3.0 * f(t + 4 * s);
    return r / (12.0 * s);
  }
  double c = t;
  if (c - 3 * h < lo) c = lo + 3 * h;
  if (c + 3 * h > hi) c = hi - 3 * h;
  if (order == 2) {
    R r = -f(c - 2 * h) + 16.0 * f(c - h) - 30.0 * f(c) + 16.0 * f(c + h) - f(c + 2 * h);
    return r / (12.0 * h * h);
  }
  R r = f(c - 3 * h) - 8.0 * f(c - 2 * h) + 13.0 * f(c - h) - 13.0 * f(c + h) + 8.0 * f(c + 2 * h) -
        f(c + 3 * h);
  return r / (8.0 * h * h * h);
}

/// Piecewise cubic Hermite interpolant over a sorted (not necessarily
/// uniform) grid. C^1, and exact at the nodes.
class HermiteTable {
 public:
  HermiteTable() = default;
  HermiteTable(std::vector<double> nodes, std::vector<double> values, std::vector<double> slopes);

  double value(double t) const;
  double derivative(double t) const;

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& slopes() const { return slopes_; }
  bool empty() const { return nodes_.empty(); }

 private:
  std::size_t segment(double t) const;

  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  bool uniform_ = false;
};

/// Five-point Gauss-Legendre rule on [a, b].
double gauss_legendre5(const std::function<double(double)>& f, double a, double b);

/// Maximizes a unimodal function on [a, b] by golden-section search.
double golden_section_argmax(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-13);

}  // namespace flatribbon
