#pragma once

// Smooth regular space curves, their arc-length reparametrization, Frenet
// data and the built-in example curves.

#include "flatribbon/common.hpp"
#include "flatribbon/normal_field.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace flatribbon {

/// A regular curve on [start, end] in an arbitrary parameter. Missing
/// derivative evaluators are replaced by fourth-order central differences
/// with step (end - start) * 1e-4.
struct CurveSpec {
  std::function<Vec3(double)> position;
  std::function<Vec3(double)> first;
  std::function<Vec3(double)> second;
  std::function<Vec3(double)> third;
  double start = 0.0;
  double end = 1.0;
};

/// Position and arc-length derivatives up to order three at one parameter.
struct CurveJet {
  Vec3 point;
  Vec3 tangent;  // gamma'
  Vec3 second;   // gamma''
  Vec3 third;    // gamma'''
};

class ArcLengthCurve {
 public:
  ArcLengthCurve() = default;

  double length() const;
  std::size_t grid_size() const;

  Vec3 position(double t) const;
  Vec3 tangent(double t) const { return jet(t).tangent; }
  CurveJet jet(double t) const;

  /// Underlying parameter of the source curve at arc length t.
  double parameter(double t) const;
  /// Speed |dc/dp| of the source curve at arc length t.
  double source_speed(double t) const;

  /// Wraps a curve that is already unit speed on [start, end].
  static ArcLengthCurve from_unit_speed(CurveSpec spec, std::size_t grid_size = 2000);

 private:
  struct Impl;
  friend ArcLengthCurve arc_length_reparametrize(const CurveSpec&, std::size_t, double);
  explicit ArcLengthCurve(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Arc-length reparametrization through a cumulative Simpson table, a
/// Hermite initial guess and Newton refinement of the inverse map.
/// Throws NonRegularCurve when the speed drops below 1e-12 at a sample and
/// ToleranceNotMet when the length estimate is not converged to `tol`.
ArcLengthCurve arc_length_reparametrize(const CurveSpec& curve, std::size_t grid_size,
                                        double tol = 1e-8);

inline constexpr double kCurvatureThreshold = 1e-9;

struct FrenetData {
  Vec3 tangent;
  double curvature = 0.0;
  std::optional<double> torsion;
  std::optional<Vec3> principal_normal;
  std::optional<Vec3> binormal;
};

/// Principal normal, binormal and torsion are absent where the curvature is
/// below kCurvatureThreshold.
FrenetData frenet_data(const ArcLengthCurve& curve, double t);

/// max over `nodes` equispaced points of ||gamma'| - 1|, where gamma' is
/// measured by finite differences of the position map (so the inverse
/// arc-length map is exercised, not just the normalized derivative).
double unit_speed_defect(const ArcLengthCurve& curve, std::size_t nodes);

// --- example curves -------------------------------------------------------

struct HelixParams {
  double radius = 1.0;          // a
  double reduced_pitch = 1.0;   // b, pitch = 2 pi b
  double length = 0.0;          // 0 selects one full turn, 2 pi sqrt(a^2 + b^2)
};

/// gamma(t) = (a cos(t/c), a sin(t/c), b t / c) with c = sqrt(a^2 + b^2).
ArcLengthCurve make_helix(const HelixParams& params);
CurveSpec helix_spec(const HelixParams& params);

struct TorusKnotParams {
  double major_radius = 2.0;
  double minor_radius = 1.0;
  int winding = 3;
};

struct TorusKnot {
  ArcLengthCurve curve;
  NormalField torus_normal;  // outward unit normal of the torus along the curve
  TorusKnotParams params;
};

/// c(phi) = ((R + r cos n phi) cos phi, (R + r cos n phi) sin phi, r sin n phi)
/// for phi in [0, 2 pi], reparametrized by arc length.
TorusKnot make_torus_knot(const TorusKnotParams& params, std::size_t grid_size = 4000);
CurveSpec torus_knot_spec(const TorusKnotParams& params);

/// Distance from p to the torus surface of the given radii (axis = z).
double torus_distance(const TorusKnotParams& params, const Vec3& p);

/// Cubic spline through (t, x, y, z) samples with not-a-knot ends.
CurveSpec spline_spec(std::span<const double> params, std::span<const Vec3> points);

struct NonplanarityResult {
  bool nonplanar = true;
  std::optional<std::pair<double, double>> witness;  // planar run, when found
};

/// Scans `grid_size` + 1 nodes for a run of three or more consecutive nodes
/// on which the curve is planar (torsion or curvature vanishing to within
/// 1e-9 of the curvature scale).
NonplanarityResult is_locally_nonplanar(const ArcLengthCurve& curve, std::size_t grid_size);

}  // namespace flatribbon
