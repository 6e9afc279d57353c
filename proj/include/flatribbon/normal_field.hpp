#pragma once

#include "flatribbon/common.hpp"

#include <functional>
#include <string>

namespace flatribbon {

/// Unit vector field along an arc-length curve, always orthogonal to the
/// tangent. Carries its own derivative when one is known in closed form;
/// otherwise derivative() falls back to fourth-order central differences
/// with step L * 1e-4.
class NormalField {
 public:
  using Evaluator = std::function<Vec3(double)>;

  NormalField() = default;
  NormalField(Evaluator value, Evaluator derivative, double length, std::string label);

  Vec3 operator()(double t) const { return value_(t); }
  Vec3 derivative(double t) const;

  bool has_analytic_derivative() const { return static_cast<bool>(derivative_); }
  double length() const { return length_; }
  const std::string& label() const { return label_; }

 private:
  Evaluator value_;
  Evaluator derivative_;
  double length_ = 0.0;
  std::string label_;
};

/// Smooth real function on [0, L] together with its derivative; used for
/// rotation angles, ruling-angle prescriptions and the torsion integral.
struct AngleFunction {
  std::function<double(double)> value;
  std::function<double(double)> rate;

  static AngleFunction constant(double c);
  static AngleFunction linear(double intercept, double slope);

  double operator()(double t) const { return value(t); }
};

}  // namespace flatribbon
