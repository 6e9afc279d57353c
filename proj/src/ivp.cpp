#include "flatribbon/ivp.hpp"

#include "flatribbon/ribbon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flatribbon {

AnglePrescription AnglePrescription::constant(double phi) {
  if (!(phi > 0.0 && phi < kPi)) throw Error(ErrorCode::InvalidParams, "prescribed angle must lie in (0, pi)");
  return AnglePrescription([phi](double) { return phi; });
}

AnglePrescription AnglePrescription::ruling_angle_of(const FlatRibbon& ribbon) {
  return ruling_angle_of(ribbon.slope());
}

AnglePrescription AnglePrescription::ruling_angle_of(const RulingSlope& slope) {
  return AnglePrescription([slope](double t) { return arccot(slope.value(t)); });
}

double rhs_prescribed(double theta, const DarbouxScalars& s, double phi) {
  const double cot = std::cos(phi) / std::sin(phi);
  return cot * (s.geodesic_curvature * std::sin(theta) - s.normal_curvature * std::cos(theta)) - s.geodesic_torsion;
}

double rhs_same_angle(double theta, const DarbouxScalars& s) {
  if (std::abs(s.normal_curvature) < 1e-9)
    throw Error(ErrorCode::NormalCurvatureZero,
                "same-angle equation is singular where the base normal curvature vanishes; "
                "use the prescribed-angle form with the base ruling angle");
  const double tg = s.geodesic_torsion;
  return tg * std::cos(theta) - tg - s.geodesic_curvature * tg / s.normal_curvature * std::sin(theta);
}

AngleRhs prescribed_angle_rhs(const ArcLengthCurve& curve, const NormalField& field, const AnglePrescription& phi) {
  return [curve, field, phi](double t, double theta) {
    return rhs_prescribed(theta, darboux_scalars(curve, field, t), phi(t));
  };
}

AngleRhs same_angle_rhs(const ArcLengthCurve& curve, const NormalField& field) {
  return [curve, field](double t, double theta) { return rhs_same_angle(theta, darboux_scalars(curve, field, t)); };
}

ThetaSolution::ThetaSolution(std::vector<double> grid, std::vector<double> values, std::vector<double> rates,
                             AngleRhs rhs, double step, double error_estimate)
    : table_(std::move(grid), std::move(values), std::move(rates)),
      rhs_(std::move(rhs)),
      step_(step),
      error_estimate_(error_estimate) {}

AngleFunction ThetaSolution::as_angle() const {
  ThetaSolution copy = *this;
  return {[copy](double t) { return copy.value(t); }, [copy](double t) { return copy.derivative(t); }};
}

namespace {

double rk4_step(const AngleRhs& f, double t, double y, double h) {
  const double k1 = f(t, y);
  const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const double k4 = f(t + h, y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct Sweep {
  std::vector<double> grid, values;
  double error = 0.0;
};

// Grid with a node at t0 and steps as close to L / intervals as the split
// allows.
std::vector<double> split_grid(double length, double t0, std::size_t intervals) {
  std::size_t left = static_cast<std::size_t>(std::llround(static_cast<double>(intervals) * t0 / length));
  if (t0 > 0.0 && left == 0) left = 1;
  if (t0 < length && left == intervals) left = intervals - 1;
  const std::size_t right = intervals - left;
  std::vector<double> grid;
  grid.reserve(intervals + 1);
  for (std::size_t i = 0; i < left; ++i) grid.push_back(t0 * static_cast<double>(i) / static_cast<double>(left));
  grid.push_back(t0);
  for (std::size_t i = 1; i <= right; ++i)
    grid.push_back(t0 + (length - t0) * static_cast<double>(i) / static_cast<double>(right));
  if (right > 0) grid.back() = length;
  return grid;
}

Sweep integrate(const AngleRhs& rhs, double length, const InitialCondition& ic, std::size_t intervals) {
  Sweep s;
  s.grid = split_grid(length, ic.t0, intervals);
  s.values.assign(s.grid.size(), 0.0);
  const auto start = static_cast<std::size_t>(std::find(s.grid.begin(), s.grid.end(), ic.t0) - s.grid.begin());
  s.values[start] = ic.q;

  auto advance = [&](std::size_t from, std::size_t to) {
    const double t = s.grid[from], h = s.grid[to] - t;
    const double full = rk4_step(rhs, t, s.values[from], h);
    const double half = rk4_step(rhs, t + 0.5 * h, rk4_step(rhs, t, s.values[from], 0.5 * h), 0.5 * h);
    s.error = std::max(s.error, std::abs(half - full) / 15.0);
    s.values[to] = full;
  };
  for (std::size_t i = start; i + 1 < s.grid.size(); ++i) advance(i, i + 1);
  for (std::size_t i = start; i > 0; --i) advance(i, i - 1);
  return s;
}

}  // namespace

ThetaSolution solve_theta(const AngleRhs& rhs, double length, const InitialCondition& ic, std::size_t grid_size,
                          double tol) {
  if (!(length > 0.0)) throw Error(ErrorCode::InvalidParams, "integration interval is empty");
  if (!(ic.t0 >= 0.0 && ic.t0 <= length))
    throw Error(ErrorCode::InvalidParams, "initial time lies outside [0, L]");
  if (grid_size < 2) throw Error(ErrorCode::InvalidParams, "solve_theta needs at least two steps");

  std::size_t intervals = grid_size;
  for (int refinement = 0; refinement <= 10; ++refinement, intervals *= 2) {
    Sweep s = integrate(rhs, length, ic, intervals);
    for (double v : s.values)
      if (!std::isfinite(v)) throw Error(ErrorCode::StepSizeUnderflow, "integrator produced a non-finite angle");
    if (s.error > tol) continue;
    std::vector<double> rates(s.grid.size());
    for (std::size_t i = 0; i < s.grid.size(); ++i) rates[i] = rhs(s.grid[i], s.values[i]);
    return ThetaSolution(std::move(s.grid), std::move(s.values), std::move(rates), rhs,
                         length / static_cast<double>(intervals), s.error);
  }
  throw Error(ErrorCode::StepSizeUnderflow,
              "per-step error stays above " + std::to_string(tol) + " after ten grid doublings");
}

double lipschitz_bound(std::span<const DarbouxScalars> scalars, std::span<const double> phi) {
  if (scalars.size() != phi.size()) throw Error(ErrorCode::InvalidParams, "lipschitz_bound needs matching samples");
  double geodesic = 0.0, normal = 0.0;
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    const double cot = std::cos(phi[i]) / std::sin(phi[i]);
    geodesic = std::max(geodesic, std::abs(scalars[i].geodesic_curvature * cot));
    normal = std::max(normal, std::abs(scalars[i].normal_curvature * cot));
  }
  return geodesic + normal;
}

AngleFunction torsion_integral(const ArcLengthCurve& curve, std::size_t nodes) {
  std::vector<double> grid = uniform_grid(0.0, curve.length(), nodes);
  std::vector<double> torsion(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const FrenetData f = frenet_data(curve, grid[i]);
    if (!f.torsion) throw Error(ErrorCode::VanishingCurvature, "torsion undefined at t = " + std::to_string(grid[i]));
    torsion[i] = *f.torsion;
  }
  std::vector<double> psi = cumulative_simpson(torsion, grid[1] - grid[0]);
  HermiteTable table(std::move(grid), std::move(psi), std::move(torsion));
  return {[table](double t) { return table.value(t); }, [table](double t) { return table.derivative(t); }};
}

AngleFunction closed_form_case_b(double q, const AngleFunction& psi) {
  if (!(q >= 0.0 && q < 2.0 * kPi)) throw Error(ErrorCode::InvalidParams, "initial angle must lie in [0, 2 pi)");
  if (q == 0.0) return AngleFunction::constant(0.0);
  const double offset = std::cos(q / 2) / std::sin(q / 2);
  return {[psi, offset](double t) { return 2.0 * arccot(offset + psi(t)); },
          [psi, offset](double t) {
            const double d = offset + psi(t);
            return -2.0 * psi.rate(t) / (1.0 + d * d);
          }};
}

AngleFunction closed_form_helix_pi2(double radius, double reduced_pitch) {
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidParams, "helix radius must be positive");
  return AngleFunction::linear(0.0, -reduced_pitch / (radius * radius + reduced_pitch * reduced_pitch));
}

}  // namespace flatribbon
