#pragma once

// The `ribbon` tool's commands. Each writes its tables into the configured
// output directory and a short report to `log`.

#include "flatribbon/config.hpp"
#include "flatribbon/ivp.hpp"
#include "flatribbon/ribbon.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flatribbon {

/// Curve and base normal field selected by a configuration.
struct Scene {
  ArcLengthCurve curve;
  NormalField base;
  std::string label;  // "<curve kind>/<normal kind>"
  std::optional<TorusKnotParams> torus;
};

Scene make_scene(const RunConfig& config);

/// A ribbon of the family through the base field: N rotated by theta, with
/// theta(0) = q.
struct FamilyMember {
  double q = 0.0;
  ThetaSolution theta;
  NormalField field;
  std::string equation;  // "same_angle" or "prescribed"
};

/// Solves the same-angle equation (or the prescribed-angle equation for a
/// constant phi). Where the base normal curvature vanishes the same-angle
/// form is replaced by the prescribed form with phi = ruling angle of the
/// base ribbon.
FamilyMember solve_member(const Scene& scene, const RunConfig& config, double q);

/// The phi that the family realizes: the configured constant or the base
/// ribbon's ruling angle.
AnglePrescription family_angle(const Scene& scene, const RunConfig& config);

void cmd_build(const RunConfig& config, std::ostream& log);
void cmd_solve(const RunConfig& config, std::ostream& log);
void cmd_energy(const RunConfig& config, std::ostream& log);
void cmd_sweep(const RunConfig& config, std::ostream& log);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Every registered invariant check, run on the configured curve and field
/// plus the helix closed forms.
std::vector<CheckResult> run_validation(const RunConfig& config);

/// Runs run_validation, prints one `name,measured,bound,pass` line per check
/// and writes validate.csv. Returns true when every check passes.
bool cmd_validate(const RunConfig& config, std::ostream& log);

/// Dispatches on config.mode and maps failures to exit codes: 0 success,
/// 1 failed validation, 2 configuration, 3 mathematical, 4 IO.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace flatribbon
