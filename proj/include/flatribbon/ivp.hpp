#pragma once

// Rotation-angle initial value problems. Rotating the Darboux frame of a
// base field N by theta(t) gives a flat ribbon whose ruling angle is a
// prescribed phi(t) when
//     theta' = cot(phi) (kg sin theta - kn cos theta) - tg,
// and the same ruling angle as R(N) when
//     kn theta' = tg kn cos theta - kg tg sin theta - kn tg.

#include "flatribbon/darboux.hpp"
#include "flatribbon/numerics.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace flatribbon {

class FlatRibbon;
class RulingSlope;

/// phi: [0, L] -> (0, pi).
class AnglePrescription {
 public:
  AnglePrescription() = default;
  explicit AnglePrescription(std::function<double(double)> angle) : angle_(std::move(angle)) {}

  static AnglePrescription constant(double phi);
  /// The (continuously extended) ruling angle of an existing ribbon.
  static AnglePrescription ruling_angle_of(const FlatRibbon& ribbon);
  static AnglePrescription ruling_angle_of(const RulingSlope& slope);

  double operator()(double t) const { return angle_(t); }

 private:
  std::function<double(double)> angle_;
};

struct InitialCondition {
  double t0 = 0.0;
  double q = 0.0;
};

/// theta' = F(t, theta).
using AngleRhs = std::function<double(double t, double theta)>;

/// cot(phi) (kg sin theta - kn cos theta) - tg.
double rhs_prescribed(double theta, const DarbouxScalars& scalars, double phi);

/// tg cos theta - tg - (kg tg / kn) sin theta. Throws NormalCurvatureZero
/// where |kn| < 1e-9.
double rhs_same_angle(double theta, const DarbouxScalars& scalars);

AngleRhs prescribed_angle_rhs(const ArcLengthCurve& curve, const NormalField& field,
                              const AnglePrescription& phi);
AngleRhs same_angle_rhs(const ArcLengthCurve& curve, const NormalField& field);

/// Dense solution on a grid. Between nodes theta is the cubic Hermite
/// interpolant of (theta_i, F(t_i, theta_i)); the derivative is always
/// re-evaluated from the right-hand side so the defining ODE holds exactly
/// wherever the solution is sampled.
class ThetaSolution {
 public:
  ThetaSolution() = default;
  ThetaSolution(std::vector<double> grid, std::vector<double> values, std::vector<double> rates, AngleRhs rhs,
                double step, double error_estimate);

  double value(double t) const { return table_.value(t); }
  double derivative(double t) const { return rhs_(t, value(t)); }

  const std::vector<double>& grid() const { return table_.nodes(); }
  const std::vector<double>& values() const { return table_.values(); }
  const std::vector<double>& rates() const { return table_.slopes(); }

  std::string method() const { return "rk4-fixed-step"; }
  double step() const { return step_; }
  double error_estimate() const { return error_estimate_; }

  AngleFunction as_angle() const;

 private:
  HermiteTable table_;
  AngleRhs rhs_;
  double step_ = 0.0;
  double error_estimate_ = 0.0;
};

/// Classical RK4 with fixed step L / grid_size, forward and backward from
/// t0. The per-step Richardson estimate (one step vs two half steps) must
/// stay below `tol`; otherwise the grid is doubled, and after ten doublings
/// StepSizeUnderflow is thrown.
ThetaSolution solve_theta(const AngleRhs& rhs, double length, const InitialCondition& ic,
                          std::size_t grid_size = 2000, double tol = 1e-9);

/// max|kg cot phi| + max|kn cot phi| over the samples.
double lipschitz_bound(std::span<const DarbouxScalars> scalars, std::span<const double> phi);

/// psi(t) = integral of the Frenet torsion from 0 to t (cumulative Simpson on
/// `nodes` points, Hermite interpolation with the torsion as slope).
AngleFunction torsion_integral(const ArcLengthCurve& curve, std::size_t nodes = 2001);

/// 0 for q = 0, otherwise 2 arccot(cot(q/2) + psi(t)); solves
/// theta' = tau (cos theta - 1).
AngleFunction closed_form_case_b(double q, const AngleFunction& psi);

/// theta(t) = -b t / (a^2 + b^2): the rotation of a helix's principal normal
/// whose ribbon has ruling angle pi/2.
AngleFunction closed_form_helix_pi2(double radius, double reduced_pitch);

}  // namespace flatribbon
