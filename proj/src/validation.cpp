#include "flatribbon/commands.hpp"

#include "flatribbon/energy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace flatribbon {

namespace {

class Registry {
 public:
  void at_most(const std::string& name, double measured, double bound) {
    results_.push_back({name, measured, bound, std::isfinite(measured) && measured <= bound});
  }
  void at_least(const std::string& name, double measured, double bound) {
    results_.push_back({name, measured, bound, std::isfinite(measured) && measured >= bound});
  }
  void within(const std::string& name, double measured, double lo, double hi) {
    const double distance = measured < lo ? lo - measured : (measured > hi ? measured - hi : 0.0);
    results_.push_back({name, measured, hi, std::isfinite(measured) && distance == 0.0});
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

// Angle-defect curvature of a mesh whose quads are planar up to rounding.
constexpr double kCurvatureRoundoff = 1e-9;

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void curve_checks(Registry& reg, const Scene& scene, const RunConfig& config) {
  const ArcLengthCurve& curve = scene.curve;
  reg.at_most("curve.unit_speed", unit_speed_defect(curve, config.ribbon.nodes), 1e-8);

  double frenet = 0.0;
  const std::vector<double> grid = uniform_grid(0.0, curve.length(), 401);
  for (double t : grid) {
    const FrenetData f = frenet_data(curve, t);
    if (f.curvature <= 1e-6) continue;
    frenet = std::max(frenet, (f.tangent.cross(*f.principal_normal) - *f.binormal).norm());
    frenet = std::max(frenet, std::abs(f.binormal->norm() - 1.0));
    frenet = std::max(frenet, std::abs(f.binormal->dot(f.tangent)));
  }
  reg.at_most("curve.frenet_consistency", frenet, 1e-8);

  const double a = 1.0, b = 1.0;
  const ArcLengthCurve helix = make_helix({a, b, 0.0});
  double exact = 0.0;
  for (double t : uniform_grid(0.0, helix.length(), 101)) {
    const FrenetData f = frenet_data(helix, t);
    exact = std::max(exact, std::abs(f.curvature - a / (a * a + b * b)));
    exact = std::max(exact, std::abs(*f.torsion - b / (a * a + b * b)));
  }
  reg.at_most("curve.helix_curvature_torsion", exact, 1e-10);
  reg.at_most("curve.helix_length", relative(helix.length(), 2.0 * kPi * std::sqrt(a * a + b * b)), 1e-8);
}

void darboux_checks(Registry& reg, const Scene& scene, std::mt19937_64& rng) {
  const ArcLengthCurve& curve = scene.curve;
  double ortho = 0.0, handed = 0.0;
  for (double t : uniform_grid(0.0, curve.length(), 401)) {
    const DarbouxFrame f = darboux_frame(curve, scene.base, t);
    Eigen::Matrix3d m;
    m << f.tangent, f.side, f.normal;
    ortho = std::max(ortho, (m.transpose() * m - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
    handed = std::max(handed, std::abs(m.determinant() - 1.0));
  }
  reg.at_most("darboux.frame_orthonormality", ortho, 1e-10);
  reg.at_most("darboux.frame_right_handed", handed, 1e-10);

  std::uniform_real_distribution<double> angle(-kPi, kPi), scalar(-3.0, 3.0);
  double group = 0.0, pythagoras = 0.0, partner = 0.0;
  for (int i = 0; i < 100; ++i) {
    const DarbouxScalars s{scalar(rng), scalar(rng), scalar(rng)};
    const double a1 = angle(rng), r1 = scalar(rng), a2 = angle(rng), r2 = scalar(rng);
    const DarbouxScalars twice = rotate(rotate(s, a1, r1), a2, r2);
    const DarbouxScalars once = rotate(s, a1 + a2, r1 + r2);
    group = std::max({group, std::abs(twice.geodesic_curvature - once.geodesic_curvature),
                      std::abs(twice.normal_curvature - once.normal_curvature),
                      std::abs(twice.geodesic_torsion - once.geodesic_torsion)});
    const DarbouxScalars r = rotate(s, a1, r1);
    const double k2 = s.geodesic_curvature * s.geodesic_curvature + s.normal_curvature * s.normal_curvature;
    pythagoras = std::max(pythagoras, std::abs(r.geodesic_curvature * r.geodesic_curvature +
                                               r.normal_curvature * r.normal_curvature - k2));
    partner = std::max(partner, std::abs(rotate(s, isometric_partner_angle(s), 0.0).geodesic_curvature -
                                         s.geodesic_curvature));
  }
  reg.at_most("darboux.rotation_group_action", group, 1e-12);
  reg.at_most("darboux.pythagoras", pythagoras, 1e-12);
  reg.at_most("darboux.isometric_partner", partner, 1e-12);

  const ArcLengthCurve helix = make_helix({});
  const NormalField frenet = frenet_rotation_field(helix, 0.7);
  std::uniform_real_distribution<double> where(0.0, helix.length());
  double torsion = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = where(rng);
    torsion = std::max(torsion, std::abs(darboux_scalars(helix, frenet, t).geodesic_torsion -
                                         *frenet_data(helix, t).torsion));
  }
  reg.at_most("darboux.frenet_rotation_torsion", torsion, 1e-8);
}

void ribbon_checks(Registry& reg, const Scene& scene, const RunConfig& config) {
  const RulingSlope slope = mu_field(scene.curve, scene.base, config.ribbon.nodes);
  const double w = std::min(config.ribbon.half_width, 0.5 * max_regular_width(slope));
  const FlatRibbon ribbon(scene.curve, scene.base, w, slope);
  const double perturbation =
      config.validate.fault == FaultKind::RulingPerturbation ? config.validate.perturbation : 0.0;

  const FlatnessReport report = flatness_residuals(ribbon, 400, 8, perturbation);
  reg.at_most("ribbon.normal_residual", report.normal_residual, 1e-8);
  reg.at_most("ribbon.developability_residual", report.developability_residual, 1e-8);

  double width = 0.0, cot = 0.0, range = 0.0;
  for (double t : uniform_grid(0.0, scene.curve.length(), 401)) {
    const DarbouxFrame f = ribbon.frame(t);
    const Vec3 x = ribbon.ruling(t);
    const Vec3 across = 2.0 * w * (x - x.dot(f.tangent) * f.tangent);
    width = std::max(width, std::abs(across.norm() - 2.0 * w));
    const double alpha = ruling_angle(ribbon, t);
    const double mu = ribbon.slope().value(t);
    cot = std::max(cot, std::abs(std::cos(alpha) / std::sin(alpha) - mu) / (1.0 + std::abs(mu)));
    if (!(alpha > 0.0 && alpha < kPi)) range = 1.0;
  }
  reg.at_most("ribbon.width_definition", width, 1e-10);
  reg.at_most("ribbon.ruling_angle_cot", cot, 1e-12);
  reg.at_most("ribbon.ruling_angle_range", range, 0.0);

  const double coarse = flatness_residuals(ribbon, 101, 5).gaussian_curvature;
  const double fine = flatness_residuals(ribbon, 201, 9).gaussian_curvature;
  if (coarse > kCurvatureRoundoff)
    reg.at_least("ribbon.mesh_curvature_refinement", coarse / std::max(fine, 1e-300), 2.0);
  else
    reg.at_most("ribbon.mesh_curvature_roundoff", std::max(coarse, fine), kCurvatureRoundoff);
}

void ivp_checks(Registry& reg, const Scene& scene, const RunConfig& config) {
  const AnglePrescription phi = family_angle(scene, config);
  const double L = scene.curve.length();
  double angle_error = 0.0, same_angle = 0.0;
  for (double q : config.ivp.q) {
    const FamilyMember m = solve_member(scene, config, q);
    const RulingSlope slope = mu_field(scene.curve, m.field, config.ribbon.nodes);
    for (std::size_t i = 0; i < slope.size(); ++i)
      if (std::abs(slope.scalars()[i].normal_curvature) > 1e-4)
        angle_error = std::max(angle_error, std::abs(arccot(slope.values()[i]) - phi(slope.grid()[i])));
    if (m.equation == "same_angle") {
      const ScalarSamples base = sample_scalars(scene.curve, scene.base, config.ribbon.nodes);
      for (std::size_t i = 0; i < slope.size(); ++i) {
        const DarbouxScalars& n = base.values[i];
        const DarbouxScalars& v = slope.scalars()[i];
        same_angle = std::max(same_angle, std::abs(n.geodesic_torsion * v.normal_curvature -
                                                   v.geodesic_torsion * n.normal_curvature));
      }
    }
  }
  reg.at_most("ivp.prescribed_angle", angle_error, 1e-5);
  reg.at_most("ivp.same_angle_identity", same_angle, 1e-8);

  const double eps = 1e-6, q0 = config.ivp.q.front();
  const AngleRhs rhs = prescribed_angle_rhs(scene.curve, scene.base, phi);
  const ThetaSolution a = solve_theta(rhs, L, {0.0, q0}, config.ivp.grid, config.ivp.tol);
  const ThetaSolution b = solve_theta(rhs, L, {0.0, q0 + eps}, config.ivp.grid, config.ivp.tol);
  const ScalarSamples samples = sample_scalars(scene.curve, scene.base, config.ribbon.nodes);
  std::vector<double> angles(samples.grid.size());
  for (std::size_t i = 0; i < angles.size(); ++i) angles[i] = phi(samples.grid[i]);
  const double c = lipschitz_bound(samples.values, angles);
  double spread = 0.0;
  for (double t : a.grid()) spread = std::max(spread, std::abs(a.value(t) - b.value(t)));
  reg.at_most("ivp.gronwall_continuity", spread, eps * std::exp(c * L));

  const ArcLengthCurve helix = make_helix({});
  const AngleFunction psi = torsion_integral(helix);
  const AngleFunction exact = closed_form_case_b(kPi / 2, psi);
  const AngleRhs case_b = same_angle_rhs(helix, principal_normal_field(helix));
  auto sup_error = [&](std::size_t steps) {
    const ThetaSolution s = solve_theta(case_b, helix.length(), {0.0, kPi / 2}, steps, 1.0);
    double e = 0.0;
    for (std::size_t i = 0; i < s.grid().size(); ++i) e = std::max(e, std::abs(s.values()[i] - exact(s.grid()[i])));
    return e;
  };
  reg.at_least("ivp.rk4_order", sup_error(20) / sup_error(40), 8.0);
}

// Extreme values of q -> E(N(q)) over [0, pi): best node of an n-point scan,
// refined by golden-section search on its two neighbouring cells.
std::pair<double, double> scan_case_a(const ScalarSamples& samples, double w, int n) {
  std::vector<double> e(n);
  for (int k = 0; k < n; ++k) e[k] = case_a_energy(samples, kPi * k / n, w);
  const int hi = static_cast<int>(std::max_element(e.begin(), e.end()) - e.begin());
  const int lo = static_cast<int>(std::min_element(e.begin(), e.end()) - e.begin());
  const double cell = kPi / n;
  auto energy = [&](double q) { return case_a_energy(samples, q, w); };
  const double q_hi = golden_section_argmax(energy, (hi - 1) * cell, (hi + 1) * cell);
  const double q_lo = golden_section_argmax([&](double q) { return -energy(q); }, (lo - 1) * cell, (lo + 1) * cell);
  return {std::max(e[hi], energy(q_hi)), std::min(e[lo], energy(q_lo))};
}

void energy_checks(Registry& reg, const Scene& scene, const RunConfig& config) {
  const std::size_t nodes = config.ribbon.nodes;
  const RulingSlope slope = mu_field(scene.curve, scene.base, nodes);
  const double w_max = max_regular_width(slope);
  const double w = std::isfinite(w_max) ? 0.5 * w_max : config.ribbon.half_width;
  const FlatRibbon ribbon(scene.curve, scene.base, w, slope);
  const double closed = bending_energy_closed(ribbon, nodes).value;
  reg.at_most("energy.closed_vs_quadrature", relative(closed, bending_energy_quadrature(ribbon, nodes, 41).value),
              1e-6);

  const double limit_rate = limit_energy(slope, 1.0).value;
  if (std::isfinite(w_max)) {
    auto excess = [&](double width) {
      return bending_energy_closed(FlatRibbon(scene.curve, scene.base, width, slope), nodes).value / width -
             limit_rate;
    };
    reg.within("energy.limit_richardson_ratio", excess(w_max / 8) / excess(w_max / 16), 3.5, 4.5);
  } else {
    const double width = config.ribbon.half_width;
    reg.at_most("energy.limit_exact_lambda_zero",
                relative(bending_energy_closed(FlatRibbon(scene.curve, scene.base, width, slope), nodes).value,
                         limit_rate * width),
                1e-12);
  }

  const double x = kLambdaSeriesThreshold;
  reg.at_most("energy.branch_continuity",
              relative(log_ratio_over_x(std::nextafter(x, 0.0)), std::log((1.0 + x) / (1.0 - x)) / x), 1e-10);

  // helix closed forms
  const double a = 1.0, b = 1.0, hw = 0.1;
  const ArcLengthCurve helix = make_helix({a, b, 0.0});
  const double L = helix.length();
  const NormalField principal = principal_normal_field(helix);
  const FlatRibbon rectifying = construct_ribbon(helix, principal, hw);
  reg.at_most("energy.helix_rectifying", relative(bending_energy_closed(rectifying).value, hw * L / (2 * a * a)),
              1e-12);
  reg.at_most("energy.ratio_b_pi_r1", std::abs(helix_ratio_b(kPi, 1.0) - (2.0 - kPi / 2)), 1e-10);

  const double r = b * L / (a * a + b * b);
  const double base_energy = case_b_energy(helix, 0.0, hw);
  double ratio_b = 0.0, bound_b = -std::numeric_limits<double>::infinity();
  for (int k = 1; k < 64; ++k) {
    const double q = 2.0 * kPi * k / 64;
    const double e = case_b_energy(helix, q, hw);
    ratio_b = std::max(ratio_b, relative(e / base_energy, helix_ratio_b(q, r)));
    bound_b = std::max(bound_b, e - base_energy);
  }
  reg.at_most("energy.case_b_ratio_formula", ratio_b, 1e-6);
  reg.at_most("energy.additive_bound_case_b", bound_b, 1e-12 * base_energy);

  const NormalField case_a = rotate_field(helix, principal, closed_form_helix_pi2(a, b));
  const ScalarSamples samples = sample_scalars(helix, case_a, nodes);
  const CaseAExtrema extrema = case_a_extrema(samples, hw);
  const auto [scan_max, scan_min] = scan_case_a(samples, hw, 4096);
  double bound_a = -1.0;
  std::vector<double> extra(samples.values.size());
  for (std::size_t i = 0; i < extra.size(); ++i) extra[i] = std::pow(samples.values[i].geodesic_curvature, 2);
  const double base_a = case_a_energy(samples, 0.0, hw);
  for (int k = 0; k < 64; ++k) {
    const double e = case_a_energy(samples, 2.0 * kPi * k / 64, hw);
    bound_a = std::max(bound_a, e - base_a - 0.5 * hw * simpson(extra, samples.step));
  }
  reg.at_most("energy.case_a_extrema",
              std::max(relative(extrema.max_energy, scan_max), relative(extrema.min_energy, scan_min)), 1e-8);
  reg.at_most("energy.additive_bound_case_a", bound_a, 1e-12 * base_a);
}

}  // namespace

std::vector<CheckResult> run_validation(const RunConfig& config) {
  const Scene scene = make_scene(config);
  std::mt19937_64 rng(20240601);
  Registry reg;
  curve_checks(reg, scene, config);
  darboux_checks(reg, scene, rng);
  ribbon_checks(reg, scene, config);
  ivp_checks(reg, scene, config);
  energy_checks(reg, scene, config);
  return reg.take();
}

}  // namespace flatribbon
