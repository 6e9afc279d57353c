#pragma once

// Flat ribbons sigma(t, u) = gamma(t) + u (mu(t) T(t) + H(t)), |u| <= w, built
// from a curve and a unit normal field. mu = -tg / kn is the ruling slope;
// cot(ruling angle) = mu.

#include "flatribbon/darboux.hpp"
#include "flatribbon/numerics.hpp"

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

namespace flatribbon {

inline constexpr std::size_t kDefaultRibbonNodes = 2001;
inline constexpr double kWidthSafety = 0.9;

/// Data at one parameter value: Darboux scalars, mu and mu'.
struct RibbonSample {
  double t = 0.0;
  DarbouxScalars scalars;
  double slope = 0.0;       // mu
  double slope_rate = 0.0;  // mu'

  /// lambda = mu' - (1 + mu^2) kg; the area element is 1 + u lambda.
  double regularity_rate() const { return slope_rate - (1.0 + slope * slope) * scalars.geodesic_curvature; }
};

/// mu sampled on an equispaced grid over [0, L] and interpolated by cubic
/// Hermite pieces; nodal derivatives come from five-point differences of the
/// nodal values.
class RulingSlope {
 public:
  RulingSlope() = default;
  RulingSlope(ScalarSamples samples, std::vector<double> values);

  double value(double t) const { return table_.value(t); }
  double rate(double t) const { return table_.derivative(t); }

  const std::vector<double>& grid() const { return samples_.grid; }
  const std::vector<double>& values() const { return table_.values(); }
  const std::vector<double>& rates() const { return table_.slopes(); }
  const std::vector<DarbouxScalars>& scalars() const { return samples_.values; }
  double step() const { return samples_.step; }
  std::size_t size() const { return samples_.grid.size(); }

  RibbonSample node(std::size_t i) const;

 private:
  ScalarSamples samples_;
  HermiteTable table_;
};

/// mu = -tg / kn, extended continuously through isolated zeros of kn by
/// l'Hopital's rule with finite-difference derivatives up to order three.
/// On planar pieces (kn = tg = 0 on three or more consecutive nodes) mu = 0.
/// Throws SingularRuling when kn vanishes where tg does not and
/// ExtensionOrderExceeded when no derivative of order <= 3 resolves a zero.
RulingSlope mu_field(const ArcLengthCurve& curve, const NormalField& field,
                     std::size_t nodes = kDefaultRibbonNodes);

class FlatRibbon {
 public:
  FlatRibbon(ArcLengthCurve curve, NormalField field, double half_width, RulingSlope slope);

  const ArcLengthCurve& curve() const { return curve_; }
  const NormalField& normal() const { return field_; }
  double half_width() const { return half_width_; }
  const RulingSlope& slope() const { return slope_; }

  DarbouxFrame frame(double t) const { return darboux_frame(curve_, field_, t); }
  /// X = mu T + H.
  Vec3 ruling(double t) const;
  Vec3 point(double t, double u) const;

  /// Exact data at grid nodes, Hermite-interpolated mu elsewhere.
  RibbonSample sample(double t) const;
  /// Samples on `nodes` equispaced points; reuses the stored grid when the
  /// node counts agree.
  std::vector<RibbonSample> samples(std::size_t nodes) const;

 private:
  ArcLengthCurve curve_;
  NormalField field_;
  double half_width_;
  RulingSlope slope_;
};

/// kWidthSafety / max|lambda| over the grid; +infinity when lambda vanishes.
double max_regular_width(const RulingSlope& slope);
double max_regular_width(const ArcLengthCurve& curve, const NormalField& field,
                         std::size_t nodes = kDefaultRibbonNodes);

/// Throws WidthTooLarge when w is not below max_regular_width.
FlatRibbon construct_ribbon(const ArcLengthCurve& curve, const NormalField& field, double half_width,
                            std::size_t nodes = kDefaultRibbonNodes);

/// Angle in (0, pi) between the ruling X and the tangent: arccot(mu).
double ruling_angle(const FlatRibbon& ribbon, double t);

struct RibbonMesh {
  std::size_t rows = 0;  // along the curve
  std::size_t cols = 0;  // across the ribbon
  std::vector<double> t, u;
  std::vector<Vec3> vertices;  // row-major, index i * cols + j
  std::vector<Vec3> normals;
  std::vector<std::array<std::size_t, 3>> triangles;

  const Vec3& vertex(std::size_t i, std::size_t j) const { return vertices[i * cols + j]; }
};

/// Each quad (i, j)-(i+1, j+1) is split along its (i, j)-(i+1, j+1) diagonal.
RibbonMesh tessellate(const FlatRibbon& ribbon, std::size_t rows, std::size_t cols);

/// Angle-defect Gaussian curvature at interior vertices, row-major, zero on
/// the boundary.
std::vector<double> angle_defect_curvature(const RibbonMesh& mesh);

struct FlatnessRow {
  double t = 0.0;
  double normal_residual = 0.0;          // |<X, N>|
  double developability_residual = 0.0;  // |<X x T, X'>|
  double gaussian_curvature = 0.0;       // max |K| over the row's interior vertices
};

struct FlatnessReport {
  double normal_residual = 0.0;
  double developability_residual = 0.0;
  double gaussian_curvature = 0.0;
  double second_form_f = 0.0;  // max |<X', N>|
  double second_form_g = 0.0;  // sigma_uu = 0
  std::vector<FlatnessRow> rows;
};

/// Residuals of the flatness system on a rows x cols tessellation. X' is
/// taken by finite differences of the ruling field. `ruling_perturbation`
/// adds that multiple of N to X before measuring, for fault injection.
FlatnessReport flatness_residuals(const FlatRibbon& ribbon, std::size_t rows, std::size_t cols,
                                  double ruling_perturbation = 0.0);

}  // namespace flatribbon
