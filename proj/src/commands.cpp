#include "flatribbon/commands.hpp"

#include "flatribbon/energy.hpp"
#include "flatribbon/io.hpp"

#include <cmath>
#include <filesystem>
#include <future>
#include <ostream>

namespace flatribbon {

namespace {

const char* kind_label(CurveKind k) {
  switch (k) {
    case CurveKind::Helix: return "helix";
    case CurveKind::TorusKnot: return "torus_knot";
    case CurveKind::Samples: return "samples";
  }
  return "";
}

const char* kind_label(NormalKind k) {
  switch (k) {
    case NormalKind::Principal: return "principal";
    case NormalKind::TorusNormal: return "torus_normal";
    case NormalKind::RotationMinimizing: return "rotation_minimizing";
    case NormalKind::FrenetRotation: return "frenet_rotation";
  }
  return "";
}

std::filesystem::path output(const RunConfig& config, const std::string& name) {
  return std::filesystem::path(config.output_dir) / name;
}

std::string indexed(const std::string& stem, std::size_t k, const std::string& ext) {
  return stem + "_q" + std::to_string(k) + ext;
}

std::string short_real(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%g", v);
  return buffer;
}

}  // namespace

Scene make_scene(const RunConfig& config) {
  Scene scene;
  const CurveConfig& c = config.curve;
  switch (c.kind) {
    case CurveKind::Helix:
      scene.curve = make_helix({c.radius, c.reduced_pitch, c.length});
      break;
    case CurveKind::TorusKnot: {
      TorusKnotParams p{c.major_radius, c.minor_radius, c.winding};
      TorusKnot knot = make_torus_knot(p, c.grid);
      scene.curve = knot.curve;
      scene.torus = p;
      if (config.normal.kind == NormalKind::TorusNormal) scene.base = knot.torus_normal;
      break;
    }
    case CurveKind::Samples: {
      std::vector<double> params;
      std::vector<Vec3> points;
      read_samples_csv(c.path, params, points);
      scene.curve = arc_length_reparametrize(spline_spec(params, points), c.grid);
      break;
    }
  }
  switch (config.normal.kind) {
    case NormalKind::Principal:
      scene.base = principal_normal_field(scene.curve);
      break;
    case NormalKind::TorusNormal:
      if (!scene.torus) throw Error(ErrorCode::Config, "torus_normal needs a torus_knot curve");
      break;
    case NormalKind::RotationMinimizing:
      scene.base = rotation_minimizing_field(scene.curve, c.grid, config.normal.offset);
      break;
    case NormalKind::FrenetRotation:
      scene.base = frenet_rotation_field(scene.curve, config.normal.offset);
      break;
  }
  const bool offset_applied =
      config.normal.kind == NormalKind::RotationMinimizing || config.normal.kind == NormalKind::FrenetRotation;
  if (!offset_applied && config.normal.offset != 0.0)
    scene.base = rotate_field(scene.curve, scene.base, config.normal.offset);
  scene.label = std::string(kind_label(c.kind)) + "/" + kind_label(config.normal.kind);
  return scene;
}

AnglePrescription family_angle(const Scene& scene, const RunConfig& config) {
  if (config.ribbon.phi) return AnglePrescription::constant(*config.ribbon.phi);
  return AnglePrescription::ruling_angle_of(mu_field(scene.curve, scene.base, config.ribbon.nodes));
}

FamilyMember solve_member(const Scene& scene, const RunConfig& config, double q) {
  FamilyMember m;
  m.q = q;
  const double L = scene.curve.length();
  const InitialCondition ic{0.0, q};
  auto prescribed = [&] {
    m.equation = "prescribed";
    m.theta = solve_theta(prescribed_angle_rhs(scene.curve, scene.base, family_angle(scene, config)), L, ic,
                          config.ivp.grid, config.ivp.tol);
  };
  if (config.ribbon.phi) {
    prescribed();
  } else {
    try {
      m.equation = "same_angle";
      m.theta = solve_theta(same_angle_rhs(scene.curve, scene.base), L, ic, config.ivp.grid, config.ivp.tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NormalCurvatureZero) throw;
      prescribed();
    }
  }
  m.field = rotate_field(scene.curve, scene.base, m.theta.as_angle());
  return m;
}

void cmd_build(const RunConfig& config, std::ostream& log) {
  const Scene scene = make_scene(config);
  const AnglePrescription phi = family_angle(scene, config);
  const double w = config.ribbon.half_width;

  CsvTable scalars({"t", "geodesic_curvature", "normal_curvature", "geodesic_torsion"});
  const ScalarSamples base = sample_scalars(scene.curve, scene.base, config.ribbon.nodes);
  for (std::size_t i = 0; i < base.grid.size(); ++i)
    scalars.row() << base.grid[i] << base.values[i].geodesic_curvature << base.values[i].normal_curvature
                  << base.values[i].geodesic_torsion;
  scalars.write(output(config, "scalars.csv"));

  CsvTable summary({"index", "q", "equation", "half_width", "max_width", "normal_residual",
                    "developability_residual", "gaussian_curvature", "ruling_angle_error"});
  for (std::size_t k = 0; k < config.ivp.q.size(); ++k) {
    const FamilyMember m = solve_member(scene, config, config.ivp.q[k]);
    const FlatRibbon ribbon = construct_ribbon(scene.curve, m.field, w, config.ribbon.nodes);
    const double w_max = max_regular_width(ribbon.slope());

    const RibbonMesh mesh = tessellate(ribbon, config.mesh.rows, config.mesh.cols);
    write_obj(mesh, output(config, indexed("ribbon", k, ".obj")));

    const FlatnessReport report = flatness_residuals(ribbon, config.mesh.rows, config.mesh.cols);
    CsvTable residuals({"t", "normal_residual", "developability_residual", "gaussian_curvature"});
    for (const FlatnessRow& row : report.rows)
      residuals.row() << row.t << row.normal_residual << row.developability_residual << row.gaussian_curvature;
    residuals.write(output(config, indexed("residuals", k, ".csv")));

    double angle_error = 0.0;
    const RulingSlope& slope = ribbon.slope();
    for (std::size_t i = 0; i < slope.size(); ++i)
      if (std::abs(slope.scalars()[i].normal_curvature) > 1e-4)
        angle_error = std::max(angle_error, std::abs(arccot(slope.values()[i]) - phi(slope.grid()[i])));

    summary.row() << static_cast<double>(k) << m.q << m.equation << w << w_max << report.normal_residual
                  << report.developability_residual << report.gaussian_curvature << angle_error;
    log << "q = " << format_real(m.q) << "  " << m.equation << "  residuals " << format_real(report.normal_residual)
        << ", " << format_real(report.developability_residual) << "  K " << format_real(report.gaussian_curvature)
        << "  angle error " << format_real(angle_error) << "\n";
  }
  summary.write(output(config, "summary.csv"));
  log << "wrote " << config.ivp.q.size() << " meshes to " << config.output_dir << "\n";
}

void cmd_solve(const RunConfig& config, std::ostream& log) {
  const Scene scene = make_scene(config);
  for (std::size_t k = 0; k < config.ivp.q.size(); ++k) {
    const FamilyMember m = solve_member(scene, config, config.ivp.q[k]);
    CsvTable table({"t", "theta", "theta_rate"});
    for (std::size_t i = 0; i < m.theta.grid().size(); ++i)
      table.row() << m.theta.grid()[i] << m.theta.values()[i] << m.theta.rates()[i];
    table.write(output(config, indexed("theta", k, ".csv")));
    log << "q = " << format_real(m.q) << "  " << m.equation << "  " << m.theta.method() << "  step "
        << format_real(m.theta.step()) << "  error estimate " << format_real(m.theta.error_estimate()) << "\n";
  }
}

void cmd_energy(const RunConfig& config, std::ostream& log) {
  const Scene scene = make_scene(config);
  const double w = config.ribbon.half_width;
  CsvTable table({"label", "q", "w", "value", "method", "err_estimate"});
  for (double q : config.ivp.q) {
    const FamilyMember m = solve_member(scene, config, q);
    const FlatRibbon ribbon = construct_ribbon(scene.curve, m.field, w, config.ribbon.nodes);
    const EnergyReport reports[] = {bending_energy_closed(ribbon, config.ribbon.nodes),
                                    bending_energy_quadrature(ribbon, config.ribbon.nodes, 41),
                                    limit_energy(ribbon.slope(), w)};
    for (const EnergyReport& r : reports) {
      table.row() << scene.label << q << r.half_width << r.value << to_string(r.method) << r.error_estimate;
      log << scene.label << "  q = " << format_real(q) << "  " << to_string(r.method) << "  "
          << format_real(r.value) << "\n";
    }
  }
  table.write(output(config, "energy.csv"));
}

void cmd_sweep(const RunConfig& config, std::ostream& log) {
  const std::size_t n = config.sweep.q_points;
  std::vector<double> q(n);
  for (std::size_t k = 0; k < n; ++k) q[k] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);

  struct Tables {
    std::string a, b;
    double deviation_a = 0.0, deviation_b = 0.0;
  };
  std::vector<std::future<Tables>> jobs;
  for (double r : config.sweep.r) {
    jobs.push_back(std::async(std::launch::async, [&q, r] {
      CsvTable a({"q", "ratio"}), b({"q", "ratio"});
      Tables t;
      for (double qk : q) {
        const double ra = helix_ratio_a(qk, r), rb = helix_ratio_b(qk, r);
        a.row() << qk << ra;
        b.row() << qk << rb;
        t.deviation_a = std::max(t.deviation_a, std::abs(ra - 1.0));
        t.deviation_b = std::max(t.deviation_b, std::abs(rb - 1.0));
      }
      t.a = a.str();
      t.b = b.str();
      return t;
    }));
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Tables t = jobs[i].get();
    const std::string r = short_real(config.sweep.r[i]);
    write_text(output(config, "ratio_a_r" + r + ".csv"), t.a);
    write_text(output(config, "ratio_b_r" + r + ".csv"), t.b);
    log << "r = " << r << "  max |ratio_a - 1| = " << format_real(t.deviation_a)
        << "  max |ratio_b - 1| = " << format_real(t.deviation_b) << "\n";
  }
}

bool cmd_validate(const RunConfig& config, std::ostream& log) {
  const std::vector<CheckResult> checks = run_validation(config);
  CsvTable table({"name", "measured", "bound", "pass"});
  bool all = true;
  log << "name,measured,bound,pass\n";
  for (const CheckResult& c : checks) {
    table.row() << c.name << c.measured << c.bound << (c.pass ? "true" : "false");
    log << c.name << ',' << format_real(c.measured) << ',' << format_real(c.bound) << ','
        << (c.pass ? "true" : "false") << "\n";
    all = all && c.pass;
  }
  table.write(output(config, "validate.csv"));
  std::size_t failed = 0;
  for (const CheckResult& c : checks) failed += c.pass ? 0 : 1;
  log << checks.size() << " checks, " << failed << " failed\n";
  return all;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.mode) {
      case RunMode::Build: cmd_build(config, out); break;
      case RunMode::Solve: cmd_solve(config, out); break;
      case RunMode::Energy: cmd_energy(config, out); break;
      case RunMode::Sweep: cmd_sweep(config, out); break;
      case RunMode::Validate: return cmd_validate(config, out) ? 0 : 1;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::Config) return 2;
    if (e.code() == ErrorCode::Io) return 4;
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace flatribbon
