#pragma once

// Bending energy  E = integral of H^2 dA  of flat ribbons: the fundamental
// forms of sigma(t, u), the exact finite-width t-integral, a brute-force
// double quadrature, the vanishing-width limit and the closed forms for the
// two special ruling-angle families.

#include "flatribbon/ribbon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace flatribbon {

struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0;  // first form
  double e = 0.0, f = 0.0, g = 0.0;  // second form, relative to sigma_t x sigma_u
};

/// Forms at (t, u) from the ribbon data at t. Throws OutsideRegularDomain
/// where 1 + u lambda <= 0.
FundamentalForms fundamental_forms(const RibbonSample& sample, double u);
FundamentalForms fundamental_forms(const FlatRibbon& ribbon, double t, double u);

/// sqrt(EG - F^2).
double area_element(const FundamentalForms& forms);

/// G e / (2 (EG - F^2)); equals (1 + mu^2) kn / (2 (1 + u lambda)) on a flat
/// ribbon. Throws DegenerateMetric when EG - F^2 <= 0.
double mean_curvature(const FundamentalForms& forms);

enum class EnergyMethod { ClosedForm, SpecialCaseLambdaZero, Quadrature, LimitFormula };

const char* to_string(EnergyMethod method);

struct EnergyReport {
  double value = 0.0;
  EnergyMethod method = EnergyMethod::ClosedForm;
  double half_width = 0.0;
  double error_estimate = 0.0;
};

/// Composite Simpson in t and u of H^2 sqrt(EG - F^2) evaluated from the
/// fundamental forms; the error estimate compares with the grid that keeps
/// every other node.
EnergyReport bending_energy_quadrature(const FlatRibbon& ribbon, std::size_t t_nodes = kDefaultRibbonNodes,
                                       std::size_t u_nodes = 41);

/// |w lambda| below this switches the log integrand to its series.
inline constexpr double kLambdaSeriesThreshold = 1e-6;

/// log((1 + x) / (1 - x)) / x, with the series 2 + 2x^2/3 + 2x^4/5 for
/// |x| < kLambdaSeriesThreshold.
double log_ratio_over_x(double x);

/// (1/4) integral of (1 + mu^2)^2 kn^2 / lambda log((1 + w lambda)/(1 - w lambda))
/// by Simpson in t. Throws WidthTooLarge when |w lambda| >= 1 anywhere.
EnergyReport bending_energy_closed(const FlatRibbon& ribbon, std::size_t t_nodes = kDefaultRibbonNodes);

/// (w/2) integral of kn^2 (1 + cot(alpha)^2)^2, cot(alpha) the extended mu.
EnergyReport limit_energy(const RulingSlope& slope, double half_width);
EnergyReport limit_energy(const ArcLengthCurve& curve, const NormalField& field, double half_width,
                          std::size_t nodes = kDefaultRibbonNodes);

struct EnergyBound {
  double base_energy = 0.0;    // E(N)
  double other_energy = 0.0;   // E(V)
  double additive_bound = 0.0; // E(N) + (w/2) integral kg^2 (1 + cot^2)^2
  std::optional<double> ratio_bound;  // 1 + max (kg/kn)^2, when min|kn| > 1e-9
  bool additive_holds = false;
  bool ratio_holds = true;
};

/// Compares two ribbons along one curve in the vanishing-width limit. Both
/// must have the same ruling angle to 1e-6 on the grid, else
/// RulingAngleMismatch.
EnergyBound energy_bound(const ArcLengthCurve& curve, const NormalField& base, const NormalField& other,
                         double half_width, std::size_t nodes = kDefaultRibbonNodes);

// --- ruling angle pi/2 (geodesic torsion identically zero) ------------------

/// (w/2) integral (kn cos q - kg sin q)^2. Throws NotCaseA if |tg| > 1e-8.
double case_a_energy(const ScalarSamples& samples, double q, double half_width);
double case_a_energy(const ArcLengthCurve& curve, const NormalField& field, double q, double half_width,
                     std::size_t nodes = kDefaultRibbonNodes);

struct CaseAExtrema {
  double a = 0.0;  // integral (kg^2 - kn^2)
  double b = 0.0;  // integral kg kn
  double curvature_integral = 0.0;  // integral kappa^2
  std::vector<double> q_candidates;  // stationary initial angles in [0, pi)
  double q_max = 0.0, q_min = 0.0;   // meaningless when the energy is constant
  double max_energy = 0.0, min_energy = 0.0;
  bool constant = false;  // A = B = 0
};

CaseAExtrema case_a_extrema(const ScalarSamples& samples, double half_width);
CaseAExtrema case_a_extrema(const ArcLengthCurve& curve, const NormalField& field, double half_width,
                            std::size_t nodes = kDefaultRibbonNodes);

// --- ruling angle of the rectifying developable -----------------------------

/// E(N(theta_q)) for the family through the principal normal:
/// (w/2) integral ((1 - d^2)/(1 + d^2))^2 kappa^2 (1 + mu^2)^2, d = cot(q/2) + psi,
/// or the rectifying-developable energy itself for q = 0.
/// Throws VanishingCurvature if kappa <= kCurvatureThreshold on the grid.
double case_b_energy(const ArcLengthCurve& curve, double q, double half_width,
                     std::size_t nodes = kDefaultRibbonNodes);

/// Normalized helix energies with r = b L / (a^2 + b^2).
double helix_ratio_a(double q, double r);
/// ratio_b(0, r) = 1 (the q = 0 branch).
double helix_ratio_b(double q, double r);

}  // namespace flatribbon
