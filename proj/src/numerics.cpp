#include "flatribbon/numerics.hpp"

#include "flatribbon/common.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace flatribbon {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonRegularCurve: return "NonRegularCurve";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::NonOrthogonalNormal: return "NonOrthogonalNormal";
    case ErrorCode::VanishingCurvature: return "VanishingCurvature";
    case ErrorCode::SingularRuling: return "SingularRuling";
    case ErrorCode::ExtensionOrderExceeded: return "ExtensionOrderExceeded";
    case ErrorCode::WidthTooLarge: return "WidthTooLarge";
    case ErrorCode::NormalCurvatureZero: return "NormalCurvatureZero";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::OutsideRegularDomain: return "OutsideRegularDomain";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::NotCaseA: return "NotCaseA";
    case ErrorCode::RulingAngleMismatch: return "RulingAngleMismatch";
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::Io: return "IoError";
  }
  return "UnknownError";
}

std::vector<double> uniform_grid(double a, double b, std::size_t nodes) {
  if (nodes < 2) throw Error(ErrorCode::InvalidParams, "a grid needs at least two nodes");
  std::vector<double> grid(nodes);
  const double h = (b - a) / static_cast<double>(nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i) grid[i] = a + h * static_cast<double>(i);
  grid.back() = b;
  return grid;
}

double simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (f[0] + f[1]);
  if (n == 4) return 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]);

  std::size_t last = n - 1;  // index where the Simpson part ends
  double tail = 0.0;
  if ((n - 1) % 2 == 1) {
    last = n - 4;
    tail = 3.0 * h / 8.0 * (f[n - 4] + 3.0 * f[n - 3] + 3.0 * f[n - 2] + f[n - 1]);
  }
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < last; ++i) (i % 2 ? odd : even) += f[i];
  return h / 3.0 * (f[0] + 4.0 * odd + 2.0 * even + f[last]) + tail;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n == 2) {
    out[1] = 0.5 * h * (f[0] + f[1]);
    return out;
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 0) {
      out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    } else if (i + 1 < n) {
      out[i] = out[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
    } else {
      out[i] = out[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
    }
  }
  return out;
}

std::vector<double> grid_derivative(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw Error(ErrorCode::InvalidParams, "grid_derivative needs at least five samples");
  std::vector<double> d(n);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
  d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) /
             (12.0 * h);
  d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) /
             (12.0 * h);
  return d;
}

HermiteTable::HermiteTable(std::vector<double> nodes, std::vector<double> values,
                           std::vector<double> slopes)
    : nodes_(std::move(nodes)), values_(std::move(values)), slopes_(std::move(slopes)) {
  if (nodes_.size() < 2 || values_.size() != nodes_.size() || slopes_.size() != nodes_.size())
    throw Error(ErrorCode::InvalidParams, "HermiteTable needs matching node/value/slope arrays");
  const double h = (nodes_.back() - nodes_.front()) / static_cast<double>(nodes_.size() - 1);
  uniform_ = true;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (std::abs(nodes_[i] - (nodes_.front() + h * static_cast<double>(i))) > 1e-12 * (1.0 + std::abs(nodes_[i]))) {
      uniform_ = false;
      break;
    }
  }
}

std::size_t HermiteTable::segment(double t) const {
  const std::size_t last = nodes_.size() - 2;
  if (uniform_) {
    const double h = (nodes_.back() - nodes_.front()) / static_cast<double>(nodes_.size() - 1);
    const double k = std::floor((t - nodes_.front()) / h);
    if (k <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(k), last);
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  if (it == nodes_.begin()) return 0;
  return std::min(static_cast<std::size_t>(it - nodes_.begin()) - 1, last);
}

double HermiteTable::value(double t) const {
  const std::size_t i = segment(t);
  const double h = nodes_[i + 1] - nodes_[i];
  const double s = (t - nodes_[i]) / h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * values_[i] + (s3 - 2 * s2 + s) * h * slopes_[i] +
         (-2 * s3 + 3 * s2) * values_[i + 1] + (s3 - s2) * h * slopes_[i + 1];
}

double HermiteTable::derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = nodes_[i + 1] - nodes_[i];
  const double s = (t - nodes_[i]) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * values_[i] + (-6 * s2 + 6 * s) * values_[i + 1]) / h +
         (3 * s2 - 4 * s + 1) * slopes_[i] + (3 * s2 - 2 * s) * slopes_[i + 1];
}

double gauss_legendre5(const std::function<double(double)>& f, double a, double b) {
  static constexpr std::array<double, 5> x = {0.0, -0.5384693101056831, 0.5384693101056831,
                                              -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> w = {0.5688888888888889, 0.4786286704993665,
                                              0.4786286704993665, 0.2369268850561891,
                                              0.2369268850561891};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t k = 0; k < 5; ++k) sum += w[k] * f(mid + half * x[k]);
  return half * sum;
}

double golden_section_argmax(const std::function<double(double)>& f, double a, double b,
                             double tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace flatribbon
