#pragma once

// Run configuration for the command-line tool. The text form is a sequence of
// `key = value` lines grouped under `[section]` headers; `#` starts a comment.
//
//   mode = build
//   [curve]     kind = helix | torus_knot | samples, plus the kind's parameters
//   [normal]    kind = principal | torus_normal | rotation_minimizing | frenet_rotation
//   [ribbon]    half_width, nodes, phi = from_base | <angle in (0, pi)>
//   [ivp]       q = comma list, grid, tol
//   [mesh]      rows, cols
//   [sweep]     r = comma list, q_points
//   [validate]  fault = none | ruling_perturbation, perturbation
//   [output]    dir

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace flatribbon {

enum class RunMode { Build, Solve, Energy, Sweep, Validate };
enum class CurveKind { Helix, TorusKnot, Samples };
enum class NormalKind { Principal, TorusNormal, RotationMinimizing, FrenetRotation };
enum class FaultKind { None, RulingPerturbation };

struct CurveConfig {
  CurveKind kind = CurveKind::Helix;
  double radius = 1.0;          // helix a
  double reduced_pitch = 1.0;   // helix b
  double length = 0.0;          // helix arc length, 0 = one turn
  double major_radius = 2.0;    // torus knot R
  double minor_radius = 1.0;    // torus knot rho
  int winding = 3;              // torus knot n
  std::string path;             // samples CSV (t,x,y,z)
  std::size_t grid = 4000;      // arc-length table intervals
  bool operator==(const CurveConfig&) const = default;
};

struct NormalConfig {
  NormalKind kind = NormalKind::Principal;
  double offset = 0.0;
  bool operator==(const NormalConfig&) const = default;
};

struct RibbonConfig {
  double half_width = 0.1;
  std::size_t nodes = 2001;
  std::optional<double> phi;  // empty: ruling angle of the base ribbon
  bool operator==(const RibbonConfig&) const = default;
};

struct IvpConfig {
  std::vector<double> q = {0.0};
  std::size_t grid = 2000;
  double tol = 1e-9;
  bool operator==(const IvpConfig&) const = default;
};

struct MeshConfig {
  std::size_t rows = 800;
  std::size_t cols = 20;
  bool operator==(const MeshConfig&) const = default;
};

struct SweepConfig {
  std::vector<double> r = {1.0, 2.0, 3.0, 4.0};
  std::size_t q_points = 512;
  bool operator==(const SweepConfig&) const = default;
};

struct ValidateConfig {
  FaultKind fault = FaultKind::None;
  double perturbation = 1e-3;
  bool operator==(const ValidateConfig&) const = default;
};

struct RunConfig {
  RunMode mode = RunMode::Build;
  CurveConfig curve;
  NormalConfig normal;
  RibbonConfig ribbon;
  IvpConfig ivp;
  MeshConfig mesh;
  SweepConfig sweep;
  ValidateConfig validate;
  std::string output_dir = "out";
  bool operator==(const RunConfig&) const = default;
};

/// Throws Error(Config) on unknown sections or keys, malformed or non-finite
/// numbers and out-of-range values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Normalized text form: every key in a fixed order, numbers with 17
/// significant digits. parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& config);

const char* to_string(RunMode mode);
RunMode parse_mode(const std::string& name);

/// Comma-separated list of finite reals.
std::vector<double> parse_real_list(const std::string& text);
double parse_real(const std::string& text);

/// Default initial angles for the torus knot: -pi/2, -pi/3, -pi/6, 0.
std::vector<double> default_torus_knot_angles();

/// The torus-knot demonstration: torus normal, phi from the base ribbon,
/// default initial angles.
RunConfig torus_knot_preset();

}  // namespace flatribbon
