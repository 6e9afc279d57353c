#include "flatribbon/darboux.hpp"

#include "flatribbon/numerics.hpp"
#include "flatribbon/parallel.hpp"

#include <cmath>
#include <memory>
#include <string>

namespace flatribbon {

NormalField::NormalField(Evaluator value, Evaluator derivative, double length, std::string label)
    : value_(std::move(value)), derivative_(std::move(derivative)), length_(length), label_(std::move(label)) {}

Vec3 NormalField::derivative(double t) const {
  if (derivative_) return derivative_(t);
  return finite_difference(value_, t, length_ * 1e-4, 0.0, length_, 1);
}

AngleFunction AngleFunction::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }};
}

AngleFunction AngleFunction::linear(double intercept, double slope) {
  return {[=](double t) { return intercept + slope * t; }, [slope](double) { return slope; }};
}

DarbouxFrame darboux_frame(const ArcLengthCurve& curve, const NormalField& field, double t) {
  DarbouxFrame f;
  f.tangent = curve.tangent(t);
  f.normal = field(t);
  f.side = f.normal.cross(f.tangent);
  return f;
}

DarbouxScalars darboux_scalars(const ArcLengthCurve& curve, const NormalField& field, double t) {
  const CurveJet j = curve.jet(t);
  const Vec3 n = field(t);
  const double overlap = n.dot(j.tangent);
  if (std::abs(overlap) > 1e-8)
    throw Error(ErrorCode::NonOrthogonalNormal,
                "<N, T> = " + std::to_string(overlap) + " at t = " + std::to_string(t));
  const Vec3 dn = field.derivative(t);
  const Vec3 h = n.cross(j.tangent);
  const Vec3 dh = dn.cross(j.tangent) + n.cross(j.second);
  return {j.second.dot(h), j.second.dot(n), dh.dot(n)};
}

FrameDerivative frame_derivative(const DarbouxFrame& f, const DarbouxScalars& s) {
  return {s.geodesic_curvature * f.side + s.normal_curvature * f.normal,
          -s.geodesic_curvature * f.tangent + s.geodesic_torsion * f.normal,
          -s.normal_curvature * f.tangent - s.geodesic_torsion * f.side};
}

DarbouxScalars rotate(const DarbouxScalars& s, double angle, double angle_rate) {
  const double c = std::cos(angle), sn = std::sin(angle);
  return {s.geodesic_curvature * c + s.normal_curvature * sn,
          -s.geodesic_curvature * sn + s.normal_curvature * c, angle_rate + s.geodesic_torsion};
}

NormalField rotate_field(const ArcLengthCurve& curve, const NormalField& field, const AngleFunction& angle) {
  auto value = [curve, field, angle](double t) {
    const Vec3 n = field(t);
    const Vec3 h = n.cross(curve.tangent(t));
    const double a = angle(t);
    return Vec3(-std::sin(a) * h + std::cos(a) * n);
  };
  auto derivative = [curve, field, angle](double t) {
    const CurveJet j = curve.jet(t);
    const Vec3 n = field(t), dn = field.derivative(t);
    const Vec3 h = n.cross(j.tangent);
    const Vec3 dh = dn.cross(j.tangent) + n.cross(j.second);
    const double a = angle(t), rate = angle.rate(t);
    const double c = std::cos(a), s = std::sin(a);
    return Vec3(-rate * c * h - s * dh - rate * s * n + c * dn);
  };
  return NormalField(value, derivative, curve.length(), field.label() + "+rotation");
}

NormalField rotate_field(const ArcLengthCurve& curve, const NormalField& field, double angle) {
  return rotate_field(curve, field, AngleFunction::constant(angle));
}

NormalField principal_normal_field(const ArcLengthCurve& curve) {
  for (double t : uniform_grid(0.0, curve.length(), curve.grid_size() + 1)) {
    const double k = curve.jet(t).second.norm();
    if (k <= kCurvatureThreshold)
      throw Error(ErrorCode::VanishingCurvature, "curvature " + std::to_string(k) + " at t = " + std::to_string(t));
  }
  auto value = [curve](double t) {
    const Vec3 d2 = curve.jet(t).second;
    return Vec3(d2 / d2.norm());
  };
  auto derivative = [curve](double t) {
    const CurveJet j = curve.jet(t);
    const double k = j.second.norm();
    const Vec3 p = j.second / k;
    return Vec3((j.third - p.dot(j.third) * p) / k);
  };
  return NormalField(value, derivative, curve.length(), "principal");
}

NormalField frenet_rotation_field(const ArcLengthCurve& curve, double x) {
  NormalField rotated = rotate_field(curve, principal_normal_field(curve), x);
  return NormalField([rotated](double t) { return rotated(t); },
                     [rotated](double t) { return rotated.derivative(t); }, curve.length(), "frenet_rotation");
}

namespace {

struct TransportTable {
  std::vector<double> grid;
  std::vector<Vec3> points, tangents, normals;
};

// One double-reflection step carrying `normal` from (x0, t0) to (x1, t1).
Vec3 double_reflection(const Vec3& x0, const Vec3& t0, const Vec3& normal, const Vec3& x1, const Vec3& t1) {
  const Vec3 v1 = x1 - x0;
  const double c1 = v1.squaredNorm();
  if (c1 == 0.0) return normal;
  const Vec3 rl = normal - (2.0 / c1) * v1.dot(normal) * v1;
  const Vec3 tl = t0 - (2.0 / c1) * v1.dot(t0) * v1;
  const Vec3 v2 = t1 - tl;
  const double c2 = v2.squaredNorm();
  const Vec3 r = (c2 == 0.0) ? rl : Vec3(rl - (2.0 / c2) * v2.dot(rl) * v2);
  // remove round-off drift out of the normal plane
  const Vec3 projected = r - r.dot(t1) * t1;
  return projected / projected.norm();
}

}  // namespace

NormalField rotation_minimizing_field(const ArcLengthCurve& curve, std::size_t grid_size, double offset) {
  auto table = std::make_shared<TransportTable>();
  table->grid = uniform_grid(0.0, curve.length(), grid_size + 1);
  const std::size_t n = table->grid.size();
  table->points.resize(n);
  table->tangents.resize(n);
  table->normals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CurveJet j = curve.jet(table->grid[i]);
    table->points[i] = j.point;
    table->tangents[i] = j.tangent;
  }

  const CurveJet start = curve.jet(0.0);
  Vec3 seed;
  if (start.second.norm() > kCurvatureThreshold) {
    seed = start.second.normalized();
  } else {
    const Vec3& t0 = start.tangent;
    const Vec3 axis = std::abs(t0.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    seed = (axis - axis.dot(t0) * t0).normalized();
  }
  seed = std::cos(offset) * seed - std::sin(offset) * seed.cross(start.tangent);
  table->normals[0] = seed;
  for (std::size_t i = 0; i + 1 < n; ++i)
    table->normals[i + 1] = double_reflection(table->points[i], table->tangents[i], table->normals[i],
                                              table->points[i + 1], table->tangents[i + 1]);

  auto value = [curve, table](double t) {
    const auto& g = table->grid;
    const double h = g[1] - g[0];
    std::size_t i = static_cast<std::size_t>(std::max(0.0, std::floor(t / h)));
    i = std::min(i, g.size() - 1);
    if (t == g[i]) return table->normals[i];
    const CurveJet j = curve.jet(t);
    return double_reflection(table->points[i], table->tangents[i], table->normals[i], j.point, j.tangent);
  };
  auto derivative = [curve, value](double t) {
    const CurveJet j = curve.jet(t);
    return Vec3(-j.second.dot(value(t)) * j.tangent);
  };
  return NormalField(value, derivative, curve.length(), "rotation_minimizing");
}

double isometric_partner_angle(const DarbouxScalars& s) {
  if (std::hypot(s.geodesic_curvature, s.normal_curvature) <= kCurvatureThreshold)
    throw Error(ErrorCode::VanishingCurvature, "isometric partner needs nonzero curvature");
  return kPi - 2.0 * std::atan2(s.geodesic_curvature, s.normal_curvature);
}

ScalarSamples sample_scalars(const ArcLengthCurve& curve, const NormalField& field, std::size_t nodes) {
  ScalarSamples out;
  out.grid = uniform_grid(0.0, curve.length(), nodes);
  out.step = out.grid[1] - out.grid[0];
  out.values.resize(nodes);
  parallel_for(nodes, [&](std::size_t i) { out.values[i] = darboux_scalars(curve, field, out.grid[i]); });
  return out;
}

}  // namespace flatribbon
