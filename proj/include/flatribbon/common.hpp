#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <numbers>
#include <stdexcept>
#include <string>

namespace flatribbon {

using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;

enum class ErrorCode {
  NonRegularCurve,
  ToleranceNotMet,
  InvalidParams,
  NonOrthogonalNormal,
  VanishingCurvature,
  SingularRuling,
  ExtensionOrderExceeded,
  WidthTooLarge,
  NormalCurvatureZero,
  StepSizeUnderflow,
  OutsideRegularDomain,
  DegenerateMetric,
  NotCaseA,
  RulingAngleMismatch,
  Config,
  Io,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Configuration and IO errors are not mathematical failures.
  bool is_math_error() const noexcept { return code_ != ErrorCode::Config && code_ != ErrorCode::Io; }

 private:
  ErrorCode code_;
};

/// Inverse cotangent with range (0, pi), continuous through x = 0.
inline double arccot(double x) { return std::atan2(1.0, x); }

}  // namespace flatribbon
