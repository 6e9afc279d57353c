#include "flatribbon/ribbon.hpp"

#include "flatribbon/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flatribbon {

RulingSlope::RulingSlope(ScalarSamples samples, std::vector<double> values) : samples_(std::move(samples)) {
  std::vector<double> rates = grid_derivative(values, samples_.step);
  table_ = HermiteTable(samples_.grid, std::move(values), std::move(rates));
}

RibbonSample RulingSlope::node(std::size_t i) const {
  return {samples_.grid[i], samples_.values[i], table_.values()[i], table_.slopes()[i]};
}

namespace {

std::string at(double t) { return " at t = " + std::to_string(t); }

// Limit of tg / kn at a zero of kn via the first derivative order at which
// kn does not vanish.
double extended_ratio(const ArcLengthCurve& curve, const NormalField& field, double t, double scale,
                      double torsion_tol) {
  const double L = curve.length();
  const double h = L * 1e-4;
  auto normal_curvature = [&](double s) { return darboux_scalars(curve, field, s).normal_curvature; };
  auto torsion = [&](double s) { return darboux_scalars(curve, field, s).geodesic_torsion; };
  double power = scale;
  for (int order = 1; order <= 3; ++order) {
    power *= scale;
    const double dk = finite_difference(normal_curvature, t, h, 0.0, L, order);
    const double dt = finite_difference(torsion, t, h, 0.0, L, order);
    if (std::abs(dk) > 1e-5 * power) return dt / dk;
    if (std::abs(dt) > torsion_tol * power / scale)
      throw Error(ErrorCode::SingularRuling,
                  "normal curvature vanishes to order " + std::to_string(order) + " but geodesic torsion does not" + at(t));
  }
  throw Error(ErrorCode::ExtensionOrderExceeded, "normal curvature vanishes beyond third order" + at(t));
}

}  // namespace

RulingSlope mu_field(const ArcLengthCurve& curve, const NormalField& field, std::size_t nodes) {
  if (nodes < 5) throw Error(ErrorCode::InvalidParams, "mu_field needs at least five nodes");
  ScalarSamples samples = sample_scalars(curve, field, nodes);

  double scale = 1.0 / curve.length(), torsion_scale = 0.0;
  for (const auto& s : samples.values) {
    scale = std::max(scale, std::hypot(s.geodesic_curvature, s.normal_curvature));
    torsion_scale = std::max(torsion_scale, std::abs(s.geodesic_torsion));
  }
  const double zero_tol = 1e-8 * scale;
  const double torsion_tol = 1e-6 * std::max(scale, torsion_scale);

  std::vector<double> mu(nodes);
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < nodes; ++i) {
    const auto& s = samples.values[i];
    if (std::abs(s.normal_curvature) > zero_tol) {
      mu[i] = -s.geodesic_torsion / s.normal_curvature;
    } else {
      if (std::abs(s.geodesic_torsion) > torsion_tol)
        throw Error(ErrorCode::SingularRuling,
                    "normal curvature vanishes where geodesic torsion is " + std::to_string(s.geodesic_torsion) +
                        at(samples.grid[i]));
      zeros.push_back(i);
    }
  }
  // Runs of three or more zero nodes are planar pieces (kn = tg = 0 on an
  // interval) and keep X = H; isolated zeros get the l'Hopital limit.
  for (std::size_t k = 0; k < zeros.size();) {
    std::size_t end = k + 1;
    while (end < zeros.size() && zeros[end] == zeros[end - 1] + 1) ++end;
    if (end - k >= 3) {
      for (std::size_t j = k; j < end; ++j) mu[zeros[j]] = 0.0;
    } else {
      for (std::size_t j = k; j < end; ++j)
        mu[zeros[j]] = -extended_ratio(curve, field, samples.grid[zeros[j]], scale, torsion_tol);
    }
    k = end;
  }
  return RulingSlope(std::move(samples), std::move(mu));
}

FlatRibbon::FlatRibbon(ArcLengthCurve curve, NormalField field, double half_width, RulingSlope slope)
    : curve_(std::move(curve)), field_(std::move(field)), half_width_(half_width), slope_(std::move(slope)) {}

Vec3 FlatRibbon::ruling(double t) const {
  const DarbouxFrame f = frame(t);
  return slope_.value(t) * f.tangent + f.side;
}

Vec3 FlatRibbon::point(double t, double u) const { return curve_.position(t) + u * ruling(t); }

RibbonSample FlatRibbon::sample(double t) const {
  return {t, darboux_scalars(curve_, field_, t), slope_.value(t), slope_.rate(t)};
}

std::vector<RibbonSample> FlatRibbon::samples(std::size_t nodes) const {
  std::vector<RibbonSample> out(nodes);
  if (nodes == slope_.size()) {
    for (std::size_t i = 0; i < nodes; ++i) out[i] = slope_.node(i);
    return out;
  }
  const std::vector<double> grid = uniform_grid(0.0, curve_.length(), nodes);
  parallel_for(nodes, [&](std::size_t i) { out[i] = sample(grid[i]); });
  return out;
}

double max_regular_width(const RulingSlope& slope) {
  double worst = 0.0, scale = 1.0 / slope.grid().back();
  for (std::size_t i = 0; i < slope.size(); ++i) {
    const RibbonSample s = slope.node(i);
    worst = std::max(worst, std::abs(s.regularity_rate()));
    scale = std::max(scale, std::hypot(s.scalars.geodesic_curvature, s.scalars.normal_curvature));
  }
  if (worst <= 1e-9 * scale) return std::numeric_limits<double>::infinity();
  return kWidthSafety / worst;
}

double max_regular_width(const ArcLengthCurve& curve, const NormalField& field, std::size_t nodes) {
  return max_regular_width(mu_field(curve, field, nodes));
}

FlatRibbon construct_ribbon(const ArcLengthCurve& curve, const NormalField& field, double half_width,
                            std::size_t nodes) {
  if (!(half_width > 0.0)) throw Error(ErrorCode::InvalidParams, "ribbon half-width must be positive");
  RulingSlope slope = mu_field(curve, field, nodes);
  const double limit = max_regular_width(slope);
  if (!(half_width < limit))
    throw Error(ErrorCode::WidthTooLarge,
                "half-width " + std::to_string(half_width) + " is not below the regular bound w_max = " +
                    std::to_string(limit));
  return FlatRibbon(curve, field, half_width, std::move(slope));
}

double ruling_angle(const FlatRibbon& ribbon, double t) { return arccot(ribbon.slope().value(t)); }

RibbonMesh tessellate(const FlatRibbon& ribbon, std::size_t rows, std::size_t cols) {
  if (rows < 2 || cols < 2) throw Error(ErrorCode::InvalidParams, "tessellation needs at least 2 x 2 vertices");
  RibbonMesh mesh;
  mesh.rows = rows;
  mesh.cols = cols;
  mesh.t = uniform_grid(0.0, ribbon.curve().length(), rows);
  mesh.u = uniform_grid(-ribbon.half_width(), ribbon.half_width(), cols);
  mesh.vertices.resize(rows * cols);
  mesh.normals.resize(rows * cols);
  parallel_for(rows, [&](std::size_t i) {
    const double t = mesh.t[i];
    const Vec3 base = ribbon.curve().position(t);
    const DarbouxFrame f = ribbon.frame(t);
    const Vec3 x = ribbon.slope().value(t) * f.tangent + f.side;
    for (std::size_t j = 0; j < cols; ++j) {
      mesh.vertices[i * cols + j] = base + mesh.u[j] * x;
      mesh.normals[i * cols + j] = f.normal;
    }
  }, 16);
  mesh.triangles.reserve(2 * (rows - 1) * (cols - 1));
  for (std::size_t i = 0; i + 1 < rows; ++i) {
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      const std::size_t a = i * cols + j, b = (i + 1) * cols + j, c = (i + 1) * cols + j + 1, d = i * cols + j + 1;
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  return mesh;
}

std::vector<double> angle_defect_curvature(const RibbonMesh& mesh) {
  const std::size_t n = mesh.vertices.size();
  std::vector<double> angle(n, 0.0), area(n, 0.0);
  for (const auto& tri : mesh.triangles) {
    const Vec3& p0 = mesh.vertices[tri[0]];
    const Vec3& p1 = mesh.vertices[tri[1]];
    const Vec3& p2 = mesh.vertices[tri[2]];
    const double a = 0.5 * (p1 - p0).cross(p2 - p0).norm();
    const std::array<Vec3, 3> p = {p0, p1, p2};
    for (int k = 0; k < 3; ++k) {
      const Vec3 e1 = p[(k + 1) % 3] - p[k], e2 = p[(k + 2) % 3] - p[k];
      angle[tri[k]] += std::atan2(e1.cross(e2).norm(), e1.dot(e2));
      area[tri[k]] += a / 3.0;
    }
  }
  std::vector<double> curvature(n, 0.0);
  for (std::size_t i = 1; i + 1 < mesh.rows; ++i)
    for (std::size_t j = 1; j + 1 < mesh.cols; ++j) {
      const std::size_t v = i * mesh.cols + j;
      curvature[v] = (2.0 * kPi - angle[v]) / area[v];
    }
  return curvature;
}

FlatnessReport flatness_residuals(const FlatRibbon& ribbon, std::size_t rows, std::size_t cols,
                                  double ruling_perturbation) {
  const double L = ribbon.curve().length();
  const double h = L * 1e-4;
  auto ruling = [&](double t) {
    Vec3 x = ribbon.ruling(t);
    if (ruling_perturbation != 0.0) x += ruling_perturbation * ribbon.normal()(t);
    return x;
  };

  const RibbonMesh mesh = tessellate(ribbon, rows, cols);
  const std::vector<double> curvature = angle_defect_curvature(mesh);

  FlatnessReport report;
  report.rows.resize(rows);
  std::vector<double> second_form(rows);
  parallel_for(rows, [&](std::size_t i) {
    const double t = mesh.t[i];
    const DarbouxFrame f = ribbon.frame(t);
    const Vec3 x = ruling(t);
    const Vec3 dx = finite_difference(ruling, t, h, 0.0, L, 1);
    FlatnessRow row;
    row.t = t;
    row.normal_residual = std::abs(x.dot(f.normal));
    row.developability_residual = std::abs(x.cross(f.tangent).dot(dx));
    for (std::size_t j = 1; j + 1 < cols; ++j)
      row.gaussian_curvature = std::max(row.gaussian_curvature, std::abs(curvature[i * cols + j]));
    report.rows[i] = row;
    second_form[i] = std::abs(dx.dot(f.normal));
  }, 16);

  for (std::size_t i = 0; i < rows; ++i) {
    report.normal_residual = std::max(report.normal_residual, report.rows[i].normal_residual);
    report.developability_residual =
        std::max(report.developability_residual, report.rows[i].developability_residual);
    report.gaussian_curvature = std::max(report.gaussian_curvature, report.rows[i].gaussian_curvature);
    report.second_form_f = std::max(report.second_form_f, second_form[i]);
  }
  return report;
}

}  // namespace flatribbon
