#include "flatribbon/curve.hpp"

#include "flatribbon/numerics.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <string>

namespace flatribbon {

struct ArcLengthCurve::Impl {
  CurveSpec spec;
  bool unit_speed = false;
  double length = 0.0;
  std::size_t grid_size = 0;
  std::vector<double> params;
  std::vector<double> arclength;
  std::vector<double> speed;
  HermiteTable guess;  // arc length -> parameter, slopes 1/speed
};

namespace {

// Fills in finite-difference evaluators for any derivative the caller did
// not provide.
CurveSpec with_derivatives(CurveSpec spec) {
  if (!spec.position) throw Error(ErrorCode::InvalidParams, "curve has no position evaluator");
  if (!(spec.end > spec.start)) throw Error(ErrorCode::InvalidParams, "curve domain is empty");
  const double h = (spec.end - spec.start) * 1e-4;
  const double lo = spec.start, hi = spec.end;
  auto pos = spec.position;
  if (!spec.first)
    spec.first = [pos, h, lo, hi](double p) { return finite_difference(pos, p, h, lo, hi, 1); };
  if (!spec.second)
    spec.second = [pos, h, lo, hi](double p) { return finite_difference(pos, p, h, lo, hi, 2); };
  if (!spec.third)
    spec.third = [pos, h, lo, hi](double p) { return finite_difference(pos, p, h, lo, hi, 3); };
  return spec;
}

}  // namespace

double ArcLengthCurve::length() const { return impl_->length; }
std::size_t ArcLengthCurve::grid_size() const { return impl_->grid_size; }

double ArcLengthCurve::parameter(double t) const {
  const Impl& m = *impl_;
  t = std::clamp(t, 0.0, m.length);
  if (m.unit_speed) return m.spec.start + t;

  const auto& s = m.arclength;
  auto it = std::upper_bound(s.begin(), s.end(), t);
  std::size_t i = (it == s.begin()) ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
  i = std::min(i, s.size() - 2);

  double p = m.guess.value(t);
  auto speed = [&m](double x) { return m.spec.first(x).norm(); };
  for (int iter = 0; iter < 8; ++iter) {
    const double arc = s[i] + gauss_legendre5(speed, m.params[i], p);
    const double step = (arc - t) / speed(p);
    p -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(p))) break;
  }
  return p;
}

double ArcLengthCurve::source_speed(double t) const { return impl_->spec.first(parameter(t)).norm(); }

Vec3 ArcLengthCurve::position(double t) const { return impl_->spec.position(parameter(t)); }

CurveJet ArcLengthCurve::jet(double t) const {
  const CurveSpec& spec = impl_->spec;
  const double p = parameter(t);
  const Vec3 c1 = spec.first(p), c2 = spec.second(p), c3 = spec.third(p);
  const double v = c1.norm();
  CurveJet j;
  j.point = spec.position(p);
  j.tangent = c1 / v;
  const double a = j.tangent.dot(c2);
  const Vec3 bend = c2 - a * j.tangent;  // component of c'' normal to the tangent
  const Vec3 tangent_rate = bend / v;   // dT/dp
  j.second = bend / (v * v);
  const double a_rate = tangent_rate.dot(c2) + j.tangent.dot(c3);
  j.third = (c3 - a_rate * j.tangent - a * tangent_rate) / (v * v * v) - 2.0 * a * bend / (v * v * v * v);
  return j;
}

ArcLengthCurve ArcLengthCurve::from_unit_speed(CurveSpec spec, std::size_t grid_size) {
  auto impl = std::make_shared<Impl>();
  impl->spec = with_derivatives(std::move(spec));
  impl->unit_speed = true;
  impl->length = impl->spec.end - impl->spec.start;
  impl->grid_size = grid_size;
  return ArcLengthCurve(std::move(impl));
}

ArcLengthCurve arc_length_reparametrize(const CurveSpec& curve, std::size_t grid_size, double tol) {
  if (grid_size < 4) throw Error(ErrorCode::InvalidParams, "arc-length grid needs at least 4 intervals");
  auto impl = std::make_shared<ArcLengthCurve::Impl>();
  impl->spec = with_derivatives(curve);
  impl->grid_size = grid_size;
  const CurveSpec& spec = impl->spec;

  const std::size_t n = grid_size + 1;
  impl->params = uniform_grid(spec.start, spec.end, n);
  impl->speed.resize(n);
  const double h = (spec.end - spec.start) / static_cast<double>(grid_size);
  for (std::size_t i = 0; i < n; ++i) {
    impl->speed[i] = spec.first(impl->params[i]).norm();
    if (!(impl->speed[i] >= 1e-12))
      throw Error(ErrorCode::NonRegularCurve,
                  "speed " + std::to_string(impl->speed[i]) + " at parameter " + std::to_string(impl->params[i]));
  }

  // Simpson per interval (with its midpoint) builds the table; composite
  // Simpson on the nodes alone gives the coarse estimate for Richardson.
  impl->arclength.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double mid = spec.first(impl->params[i] + 0.5 * h).norm();
    if (!(mid >= 1e-12))
      throw Error(ErrorCode::NonRegularCurve, "speed vanishes near parameter " + std::to_string(impl->params[i]));
    impl->arclength[i + 1] = impl->arclength[i] + h / 6.0 * (impl->speed[i] + 4.0 * mid + impl->speed[i + 1]);
  }
  const double fine = impl->arclength.back();
  const double coarse = simpson(impl->speed, h);
  const double estimate = std::abs(fine - coarse) / 15.0;
  if (estimate > tol)
    throw Error(ErrorCode::ToleranceNotMet,
                "arc-length estimate " + std::to_string(estimate) + " exceeds tolerance; refine the grid");
  impl->length = fine;

  std::vector<double> slopes(n);
  for (std::size_t i = 0; i < n; ++i) slopes[i] = 1.0 / impl->speed[i];
  impl->guess = HermiteTable(impl->arclength, impl->params, std::move(slopes));
  return ArcLengthCurve(std::move(impl));
}

FrenetData frenet_data(const ArcLengthCurve& curve, double t) {
  const CurveJet j = curve.jet(t);
  FrenetData f;
  f.tangent = j.tangent;
  f.curvature = j.second.norm();
  if (f.curvature > kCurvatureThreshold) {
    f.principal_normal = j.second / f.curvature;
    f.binormal = j.tangent.cross(*f.principal_normal);
    f.torsion = j.tangent.cross(j.second).dot(j.third) / (f.curvature * f.curvature);
  }
  return f;
}

double unit_speed_defect(const ArcLengthCurve& curve, std::size_t nodes) {
  const double L = curve.length();
  const double h = L * 1e-4;
  auto pos = [&curve](double t) { return curve.position(t); };
  double worst = 0.0;
  for (double t : uniform_grid(0.0, L, nodes)) {
    const Vec3 d = finite_difference(pos, t, h, 0.0, L, 1);
    worst = std::max(worst, std::abs(d.norm() - 1.0));
  }
  return worst;
}

CurveSpec helix_spec(const HelixParams& hp) {
  if (!(hp.radius > 0.0)) throw Error(ErrorCode::InvalidParams, "helix radius must be positive");
  if (hp.reduced_pitch < 0.0) throw Error(ErrorCode::InvalidParams, "helix pitch must be non-negative");
  if (hp.length < 0.0) throw Error(ErrorCode::InvalidParams, "helix length must be non-negative");
  const double a = hp.radius, b = hp.reduced_pitch;
  const double c = std::sqrt(a * a + b * b);
  CurveSpec s;
  s.position = [=](double t) { return Vec3(a * std::cos(t / c), a * std::sin(t / c), b * t / c); };
  s.first = [=](double t) { return Vec3(-a / c * std::sin(t / c), a / c * std::cos(t / c), b / c); };
  s.second = [=](double t) {
    return Vec3(-a / (c * c) * std::cos(t / c), -a / (c * c) * std::sin(t / c), 0.0);
  };
  s.third = [=](double t) {
    return Vec3(a / (c * c * c) * std::sin(t / c), -a / (c * c * c) * std::cos(t / c), 0.0);
  };
  s.start = 0.0;
  s.end = hp.length > 0.0 ? hp.length : 2.0 * kPi * c;
  return s;
}

ArcLengthCurve make_helix(const HelixParams& params) {
  return ArcLengthCurve::from_unit_speed(helix_spec(params));
}

CurveSpec torus_knot_spec(const TorusKnotParams& tp) {
  if (!(tp.minor_radius > 0.0 && tp.minor_radius < tp.major_radius))
    throw Error(ErrorCode::InvalidParams, "torus knot needs 0 < minor radius < major radius");
  const double R = tp.major_radius, r = tp.minor_radius, n = tp.winding;
  // ring(phi) = R + r cos(n phi) is the distance from the z axis.
  CurveSpec s;
  s.position = [=](double p) {
    const double ring = R + r * std::cos(n * p);
    return Vec3(ring * std::cos(p), ring * std::sin(p), r * std::sin(n * p));
  };
  s.first = [=](double p) {
    const double ring = R + r * std::cos(n * p), d1 = -r * n * std::sin(n * p);
    const double c = std::cos(p), sn = std::sin(p);
    return Vec3(d1 * c - ring * sn, d1 * sn + ring * c, r * n * std::cos(n * p));
  };
  s.second = [=](double p) {
    const double ring = R + r * std::cos(n * p), d1 = -r * n * std::sin(n * p),
                 d2 = -r * n * n * std::cos(n * p);
    const double c = std::cos(p), sn = std::sin(p);
    return Vec3(d2 * c - 2 * d1 * sn - ring * c, d2 * sn + 2 * d1 * c - ring * sn,
                -r * n * n * std::sin(n * p));
  };
  s.third = [=](double p) {
    const double ring = R + r * std::cos(n * p), d1 = -r * n * std::sin(n * p),
                 d2 = -r * n * n * std::cos(n * p), d3 = r * n * n * n * std::sin(n * p);
    const double c = std::cos(p), sn = std::sin(p);
    return Vec3(d3 * c - 3 * d2 * sn - 3 * d1 * c + ring * sn, d3 * sn + 3 * d2 * c - 3 * d1 * sn - ring * c,
                -r * n * n * n * std::cos(n * p));
  };
  s.start = 0.0;
  s.end = 2.0 * kPi;
  return s;
}

TorusKnot make_torus_knot(const TorusKnotParams& params, std::size_t grid_size) {
  TorusKnot knot;
  knot.params = params;
  const CurveSpec spec = torus_knot_spec(params);
  knot.curve = arc_length_reparametrize(spec, grid_size, 1e-8);

  const double n = params.winding;
  const ArcLengthCurve curve = knot.curve;
  auto normal_at = [n](double p) {
    const double v = n * p;
    return Vec3(std::cos(v) * std::cos(p), std::cos(v) * std::sin(p), std::sin(v));
  };
  auto value = [curve, normal_at](double t) { return normal_at(curve.parameter(t)); };
  auto derivative = [curve, n, first = spec.first](double t) {
    const double p = curve.parameter(t);
    const double v = n * p;
    const Vec3 dp(-n * std::sin(v) * std::cos(p) - std::cos(v) * std::sin(p),
                  -n * std::sin(v) * std::sin(p) + std::cos(v) * std::cos(p), n * std::cos(v));
    return Vec3(dp / first(p).norm());
  };
  knot.torus_normal = NormalField(value, derivative, curve.length(), "torus_normal");
  return knot;
}

double torus_distance(const TorusKnotParams& params, const Vec3& p) {
  const double ring = std::hypot(p.x(), p.y()) - params.major_radius;
  return std::abs(std::hypot(ring, p.z()) - params.minor_radius);
}

CurveSpec spline_spec(std::span<const double> params, std::span<const Vec3> points) {
  const std::size_t n = params.size();
  if (n < 2 || points.size() != n)
    throw Error(ErrorCode::InvalidParams, "spline needs at least two (t, x, y, z) samples");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(params[i + 1] > params[i]))
      throw Error(ErrorCode::InvalidParams, "spline parameters must be strictly increasing");

  // Second derivatives per coordinate; not-a-knot ends keep the end
  // curvature, natural ends are used below four samples.
  std::vector<double> x(params.begin(), params.end());
  std::vector<Vec3> y(points.begin(), points.end());
  std::vector<Vec3> m(n, Vec3::Zero());
  if (n > 2) {
    std::vector<Eigen::Triplet<double>> entries;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), 3);
    const auto row = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      entries.emplace_back(row(i), row(i - 1), h0 / 6.0);
      entries.emplace_back(row(i), row(i), (h0 + h1) / 3.0);
      entries.emplace_back(row(i), row(i + 1), h1 / 6.0);
      rhs.row(row(i)) = ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0).transpose();
    }
    if (n >= 4) {
      const double h0 = x[1] - x[0], h1 = x[2] - x[1];
      entries.emplace_back(0, 0, h1);
      entries.emplace_back(0, 1, -(h0 + h1));
      entries.emplace_back(0, 2, h0);
      const double g0 = x[n - 2] - x[n - 3], g1 = x[n - 1] - x[n - 2];
      entries.emplace_back(row(n - 1), row(n - 3), g1);
      entries.emplace_back(row(n - 1), row(n - 2), -(g0 + g1));
      entries.emplace_back(row(n - 1), row(n - 1), g0);
    } else {
      entries.emplace_back(0, 0, 1.0);
      entries.emplace_back(row(n - 1), row(n - 1), 1.0);
    }
    Eigen::SparseMatrix<double> a(row(n), row(n));
    a.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(a);
    if (lu.info() != Eigen::Success) throw Error(ErrorCode::InvalidParams, "spline system is singular");
    const Eigen::MatrixXd solution = lu.solve(rhs);
    for (std::size_t i = 0; i < n; ++i) m[i] = solution.row(row(i)).transpose();
  }

  struct Data {
    std::vector<double> x;
    std::vector<Vec3> y, m;
    std::size_t segment(double t) const {
      auto it = std::upper_bound(x.begin(), x.end(), t);
      std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
      return std::min(i, x.size() - 2);
    }
  };
  auto d = std::make_shared<Data>(Data{std::move(x), std::move(y), std::move(m)});

  CurveSpec s;
  s.position = [d](double t) {
    const std::size_t i = d->segment(t);
    const double h = d->x[i + 1] - d->x[i], a = d->x[i + 1] - t, b = t - d->x[i];
    return Vec3(d->m[i] * a * a * a / (6 * h) + d->m[i + 1] * b * b * b / (6 * h) +
                (d->y[i] / h - d->m[i] * h / 6) * a + (d->y[i + 1] / h - d->m[i + 1] * h / 6) * b);
  };
  s.first = [d](double t) {
    const std::size_t i = d->segment(t);
    const double h = d->x[i + 1] - d->x[i], a = d->x[i + 1] - t, b = t - d->x[i];
    return Vec3(-d->m[i] * a * a / (2 * h) + d->m[i + 1] * b * b / (2 * h) -
                (d->y[i] / h - d->m[i] * h / 6) + (d->y[i + 1] / h - d->m[i + 1] * h / 6));
  };
  s.second = [d](double t) {
    const std::size_t i = d->segment(t);
    const double h = d->x[i + 1] - d->x[i], a = d->x[i + 1] - t, b = t - d->x[i];
    return Vec3(d->m[i] * a / h + d->m[i + 1] * b / h);
  };
  s.third = [d](double t) {
    const std::size_t i = d->segment(t);
    const double h = d->x[i + 1] - d->x[i];
    return Vec3((d->m[i + 1] - d->m[i]) / h);
  };
  s.start = params.front();
  s.end = params.back();
  return s;
}

NonplanarityResult is_locally_nonplanar(const ArcLengthCurve& curve, std::size_t grid_size) {
  const std::vector<double> grid = uniform_grid(0.0, curve.length(), grid_size + 1);
  std::vector<double> curvature(grid.size()), torsion(grid.size());
  double scale = 1.0 / curve.length();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const FrenetData f = frenet_data(curve, grid[i]);
    curvature[i] = f.curvature;
    torsion[i] = f.torsion.value_or(0.0);
    scale = std::max({scale, curvature[i], std::abs(torsion[i])});
  }
  const double eps = 1e-9 * scale;

  NonplanarityResult result;
  std::size_t run_start = 0, run_length = 0, best_start = 0, best_length = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool planar = curvature[i] <= eps || std::abs(torsion[i]) <= eps;
    if (planar) {
      if (run_length == 0) run_start = i;
      ++run_length;
      if (run_length > best_length) {
        best_length = run_length;
        best_start = run_start;
      }
    } else {
      run_length = 0;
    }
  }
  if (best_length >= 3) {
    result.nonplanar = false;
    result.witness = std::make_pair(grid[best_start], grid[best_start + best_length - 1]);
  }
  return result;
}

}  // namespace flatribbon
