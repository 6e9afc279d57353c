#pragma once

// Darboux frames (T, H, N) of a curve relative to a unit normal field, with
// H = N x T, and the scalars
//   geodesic curvature  = <T', H>
//   normal curvature    = <T', N>
//   geodesic torsion    = <H', N>.

#include "flatribbon/curve.hpp"
#include "flatribbon/normal_field.hpp"

#include <vector>

namespace flatribbon {

struct DarbouxFrame {
  Vec3 tangent;
  Vec3 side;    // H = N x T
  Vec3 normal;  // N
};

struct DarbouxScalars {
  double geodesic_curvature = 0.0;
  double normal_curvature = 0.0;
  double geodesic_torsion = 0.0;
};

struct FrameDerivative {
  Vec3 tangent;
  Vec3 side;
  Vec3 normal;
};

DarbouxFrame darboux_frame(const ArcLengthCurve& curve, const NormalField& field, double t);

/// Throws NonOrthogonalNormal when |<N, T>| > 1e-8.
DarbouxScalars darboux_scalars(const ArcLengthCurve& curve, const NormalField& field, double t);

/// T' = kg H + kn N,  H' = -kg T + tg N,  N' = -kn T - tg H.
FrameDerivative frame_derivative(const DarbouxFrame& frame, const DarbouxScalars& scalars);

/// Scalars of the frame rotated about T by `angle`, whose derivative along
/// the curve is `angle_rate`.
DarbouxScalars rotate(const DarbouxScalars& scalars, double angle, double angle_rate);

/// N(theta) = -sin(theta) H + cos(theta) N, with its exact derivative.
NormalField rotate_field(const ArcLengthCurve& curve, const NormalField& field, const AngleFunction& angle);
NormalField rotate_field(const ArcLengthCurve& curve, const NormalField& field, double angle);

/// gamma'' / |gamma''|. Throws VanishingCurvature if the curvature drops to
/// kCurvatureThreshold at any of the curve's grid nodes.
NormalField principal_normal_field(const ArcLengthCurve& curve);

/// cos(x) P + sin(x) B, i.e. |T'| N(x) = cos(x) T' - sin(x) T' x T.
/// Geodesic torsion equals the Frenet torsion, normal curvature is
/// kappa cos(x).
NormalField frenet_rotation_field(const ArcLengthCurve& curve, double x);

/// Parallel-transport field seeded with `initial` at t = 0 (principal normal,
/// or an arbitrary perpendicular on straight starts) and rotated by
/// `offset`. Built by the double-reflection method on `grid_size` intervals;
/// its derivative is -<gamma'', N> T exactly.
NormalField rotation_minimizing_field(const ArcLengthCurve& curve, std::size_t grid_size = 4000,
                                      double offset = 0.0);

/// pi - 2 atan2(kg, kn): the rotation giving a second ribbon with the same
/// geodesic curvature. Throws VanishingCurvature if kg = kn = 0.
double isometric_partner_angle(const DarbouxScalars& scalars);

/// Scalars sampled on `nodes` equispaced points of [0, L].
struct ScalarSamples {
  std::vector<double> grid;
  std::vector<DarbouxScalars> values;
  double step = 0.0;
};

ScalarSamples sample_scalars(const ArcLengthCurve& curve, const NormalField& field, std::size_t nodes);

}  // namespace flatribbon
