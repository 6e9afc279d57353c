#include "flatribbon/energy.hpp"

#include "flatribbon/numerics.hpp"
#include "flatribbon/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flatribbon {

const char* to_string(EnergyMethod method) {
  switch (method) {
    case EnergyMethod::ClosedForm: return "closed_form";
    case EnergyMethod::SpecialCaseLambdaZero: return "special_case_lambda_zero";
    case EnergyMethod::Quadrature: return "quadrature";
    case EnergyMethod::LimitFormula: return "limit_formula";
  }
  return "unknown";
}

FundamentalForms fundamental_forms(const RibbonSample& s, double u) {
  const double lambda = s.regularity_rate();
  if (!(1.0 + u * lambda > 0.0))
    throw Error(ErrorCode::OutsideRegularDomain,
                "1 + u lambda = " + std::to_string(1.0 + u * lambda) + " at t = " + std::to_string(s.t));
  const double mu = s.slope, dmu = s.slope_rate;
  const double kg = s.scalars.geodesic_curvature, kn = s.scalars.normal_curvature;
  FundamentalForms f;
  f.E = std::pow(1.0 + u * (dmu - kg), 2) + std::pow(u * mu * kg, 2);
  f.F = mu * (1.0 + u * dmu);
  f.G = 1.0 + mu * mu;
  f.e = kn * (1.0 + u * (dmu - kg - kg * mu * mu));
  f.f = 0.0;
  f.g = 0.0;
  return f;
}

FundamentalForms fundamental_forms(const FlatRibbon& ribbon, double t, double u) {
  return fundamental_forms(ribbon.sample(t), u);
}

double area_element(const FundamentalForms& f) { return std::sqrt(std::max(0.0, f.E * f.G - f.F * f.F)); }

double mean_curvature(const FundamentalForms& f) {
  const double det = f.E * f.G - f.F * f.F;
  if (!(det > 0.0)) throw Error(ErrorCode::DegenerateMetric, "EG - F^2 = " + std::to_string(det));
  return (f.G * f.e - 2.0 * f.F * f.f + f.E * f.g) / (2.0 * det);
}

EnergyReport bending_energy_quadrature(const FlatRibbon& ribbon, std::size_t t_nodes, std::size_t u_nodes) {
  if (t_nodes < 3 || u_nodes < 3) throw Error(ErrorCode::InvalidParams, "quadrature needs at least 3 x 3 nodes");
  const double w = ribbon.half_width();
  const std::vector<RibbonSample> samples = ribbon.samples(t_nodes);
  const std::vector<double> u = uniform_grid(-w, w, u_nodes);
  const double du = u[1] - u[0];
  const double dt = ribbon.curve().length() / static_cast<double>(t_nodes - 1);
  const bool coarse_u = (u_nodes - 1) % 2 == 0;

  std::vector<double> fine(t_nodes), coarse(t_nodes);
  parallel_for(t_nodes, [&](std::size_t i) {
    std::vector<double> integrand(u_nodes), every_other;
    for (std::size_t j = 0; j < u_nodes; ++j) {
      const FundamentalForms forms = fundamental_forms(samples[i], u[j]);
      const double h = mean_curvature(forms);
      integrand[j] = h * h * area_element(forms);
    }
    fine[i] = simpson(integrand, du);
    if (coarse_u) {
      for (std::size_t j = 0; j < u_nodes; j += 2) every_other.push_back(integrand[j]);
      coarse[i] = simpson(every_other, 2.0 * du);
    } else {
      coarse[i] = fine[i];
    }
  });

  EnergyReport r;
  r.method = EnergyMethod::Quadrature;
  r.half_width = w;
  r.value = simpson(fine, dt);
  if ((t_nodes - 1) % 2 == 0) {
    std::vector<double> thinned;
    for (std::size_t i = 0; i < t_nodes; i += 2) thinned.push_back(coarse[i]);
    r.error_estimate = std::abs(r.value - simpson(thinned, 2.0 * dt)) / 15.0;
  } else {
    r.error_estimate = std::abs(r.value - simpson(coarse, dt)) / 15.0;
  }
  return r;
}

double log_ratio_over_x(double x) {
  if (std::abs(x) < kLambdaSeriesThreshold) {
    const double x2 = x * x;
    return 2.0 + 2.0 / 3.0 * x2 + 2.0 / 5.0 * x2 * x2;
  }
  return std::log((1.0 + x) / (1.0 - x)) / x;
}

EnergyReport bending_energy_closed(const FlatRibbon& ribbon, std::size_t t_nodes) {
  const double w = ribbon.half_width();
  const std::vector<RibbonSample> samples = ribbon.samples(t_nodes);
  const double dt = ribbon.curve().length() / static_cast<double>(t_nodes - 1);
  std::vector<double> integrand(t_nodes);
  bool all_series = true;
  for (std::size_t i = 0; i < t_nodes; ++i) {
    const RibbonSample& s = samples[i];
    const double x = w * s.regularity_rate();
    if (!(std::abs(x) < 1.0))
      throw Error(ErrorCode::WidthTooLarge,
                  "|w lambda| = " + std::to_string(std::abs(x)) + " >= 1 at t = " + std::to_string(s.t));
    all_series = all_series && std::abs(x) < kLambdaSeriesThreshold;
    const double g = 1.0 + s.slope * s.slope;
    const double kn = s.scalars.normal_curvature;
    // (1/4) (1 + mu^2)^2 kn^2 * w * log(...)/(w lambda)
    integrand[i] = 0.25 * g * g * kn * kn * w * log_ratio_over_x(x);
  }
  EnergyReport r;
  r.method = all_series ? EnergyMethod::SpecialCaseLambdaZero : EnergyMethod::ClosedForm;
  r.half_width = w;
  r.value = simpson(integrand, dt);
  if ((t_nodes - 1) % 2 == 0 && t_nodes >= 5) {
    std::vector<double> thinned;
    for (std::size_t i = 0; i < t_nodes; i += 2) thinned.push_back(integrand[i]);
    r.error_estimate = std::abs(r.value - simpson(thinned, 2.0 * dt)) / 15.0;
  }
  return r;
}

EnergyReport limit_energy(const RulingSlope& slope, double half_width) {
  std::vector<double> integrand(slope.size());
  for (std::size_t i = 0; i < slope.size(); ++i) {
    const double kn = slope.scalars()[i].normal_curvature;
    const double g = 1.0 + slope.values()[i] * slope.values()[i];
    integrand[i] = kn == 0.0 ? 0.0 : kn * kn * g * g;
  }
  EnergyReport r;
  r.method = EnergyMethod::LimitFormula;
  r.half_width = half_width;
  r.value = 0.5 * half_width * simpson(integrand, slope.step());
  if ((slope.size() - 1) % 2 == 0 && slope.size() >= 5) {
    std::vector<double> thinned;
    for (std::size_t i = 0; i < slope.size(); i += 2) thinned.push_back(integrand[i]);
    r.error_estimate = std::abs(r.value - 0.5 * half_width * simpson(thinned, 2.0 * slope.step())) / 15.0;
  }
  return r;
}

EnergyReport limit_energy(const ArcLengthCurve& curve, const NormalField& field, double half_width,
                          std::size_t nodes) {
  return limit_energy(mu_field(curve, field, nodes), half_width);
}

EnergyBound energy_bound(const ArcLengthCurve& curve, const NormalField& base, const NormalField& other,
                         double half_width, std::size_t nodes) {
  const RulingSlope base_slope = mu_field(curve, base, nodes);
  const RulingSlope other_slope = mu_field(curve, other, nodes);
  double mismatch = 0.0;
  for (std::size_t i = 0; i < nodes; ++i)
    mismatch = std::max(mismatch, std::abs(arccot(base_slope.values()[i]) - arccot(other_slope.values()[i])));
  if (mismatch > 1e-6)
    throw Error(ErrorCode::RulingAngleMismatch, "ruling angles differ by " + std::to_string(mismatch));

  EnergyBound b;
  b.base_energy = limit_energy(base_slope, half_width).value;
  b.other_energy = limit_energy(other_slope, half_width).value;

  std::vector<double> extra(nodes);
  double min_kn = std::numeric_limits<double>::infinity(), max_ratio = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    const DarbouxScalars& s = base_slope.scalars()[i];
    const double g = 1.0 + base_slope.values()[i] * base_slope.values()[i];
    extra[i] = s.geodesic_curvature * s.geodesic_curvature * g * g;
    min_kn = std::min(min_kn, std::abs(s.normal_curvature));
    if (s.normal_curvature != 0.0)
      max_ratio = std::max(max_ratio, std::pow(s.geodesic_curvature / s.normal_curvature, 2));
  }
  b.additive_bound = b.base_energy + 0.5 * half_width * simpson(extra, base_slope.step());
  b.additive_holds = b.other_energy <= b.additive_bound;
  if (min_kn > 1e-9) {
    b.ratio_bound = 1.0 + max_ratio;
    b.ratio_holds = b.other_energy / b.base_energy <= *b.ratio_bound;
  }
  return b;
}

namespace {

void require_case_a(const ScalarSamples& samples) {
  for (std::size_t i = 0; i < samples.values.size(); ++i)
    if (std::abs(samples.values[i].geodesic_torsion) > 1e-8)
      throw Error(ErrorCode::NotCaseA, "geodesic torsion " + std::to_string(samples.values[i].geodesic_torsion) +
                                           " at t = " + std::to_string(samples.grid[i]));
}

}  // namespace

double case_a_energy(const ScalarSamples& samples, double q, double half_width) {
  require_case_a(samples);
  const double c = std::cos(q), s = std::sin(q);
  std::vector<double> integrand(samples.values.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) {
    const double kn = samples.values[i].normal_curvature * c - samples.values[i].geodesic_curvature * s;
    integrand[i] = kn * kn;
  }
  return 0.5 * half_width * simpson(integrand, samples.step);
}

double case_a_energy(const ArcLengthCurve& curve, const NormalField& field, double q, double half_width,
                     std::size_t nodes) {
  return case_a_energy(sample_scalars(curve, field, nodes), q, half_width);
}

CaseAExtrema case_a_extrema(const ScalarSamples& samples, double half_width) {
  require_case_a(samples);
  const std::size_t n = samples.values.size();
  std::vector<double> diff(n), cross(n), total(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double kg = samples.values[i].geodesic_curvature, kn = samples.values[i].normal_curvature;
    diff[i] = kg * kg - kn * kn;
    cross[i] = kg * kn;
    total[i] = kg * kg + kn * kn;
  }
  CaseAExtrema x;
  x.a = simpson(diff, samples.step);
  x.b = simpson(cross, samples.step);
  x.curvature_integral = simpson(total, samples.step);

  const double w = half_width;
  const double base = 0.25 * w * x.curvature_integral;
  const double swing = 0.25 * w * std::sqrt(x.a * x.a + 4.0 * x.b * x.b);
  x.max_energy = base + swing;
  x.min_energy = base - swing;

  // E(q) = base - (w/4) (A cos 2q + 2B sin 2q)
  auto energy = [&](double q) { return base - 0.25 * w * (x.a * std::cos(2 * q) + 2.0 * x.b * std::sin(2 * q)); };
  const double tiny = 1e-12 * std::max(x.curvature_integral, 1e-300);
  const bool b_zero = std::abs(x.b) <= tiny, a_zero = std::abs(x.a) <= tiny;
  if (a_zero && b_zero) {
    x.constant = true;
    x.max_energy = x.min_energy = base;
    return x;
  }
  if (b_zero) {
    x.q_candidates = {0.0, 0.5 * kPi};
  } else {
    const double root = std::sqrt(x.a * x.a + 4.0 * x.b * x.b);
    x.q_candidates = {arccot((x.a + root) / (2.0 * x.b)), arccot((x.a - root) / (2.0 * x.b))};
    std::sort(x.q_candidates.begin(), x.q_candidates.end());
  }
  const double e0 = energy(x.q_candidates[0]), e1 = energy(x.q_candidates[1]);
  x.q_max = e0 >= e1 ? x.q_candidates[0] : x.q_candidates[1];
  x.q_min = e0 >= e1 ? x.q_candidates[1] : x.q_candidates[0];
  return x;
}

CaseAExtrema case_a_extrema(const ArcLengthCurve& curve, const NormalField& field, double half_width,
                            std::size_t nodes) {
  return case_a_extrema(sample_scalars(curve, field, nodes), half_width);
}

double case_b_energy(const ArcLengthCurve& curve, double q, double half_width, std::size_t nodes) {
  if (!(q >= 0.0 && q < 2.0 * kPi)) throw Error(ErrorCode::InvalidParams, "initial angle must lie in [0, 2 pi)");
  const std::vector<double> grid = uniform_grid(0.0, curve.length(), nodes);
  const double dt = grid[1] - grid[0];
  std::vector<double> curvature(nodes), torsion(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const FrenetData f = frenet_data(curve, grid[i]);
    if (!f.torsion)
      throw Error(ErrorCode::VanishingCurvature, "curvature " + std::to_string(f.curvature) + " at t = " +
                                                     std::to_string(grid[i]));
    curvature[i] = f.curvature;
    torsion[i] = *f.torsion;
  }
  const std::vector<double> psi = cumulative_simpson(torsion, dt);
  std::vector<double> integrand(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double mu = -torsion[i] / curvature[i];
    const double g = 1.0 + mu * mu;
    double factor = 1.0;
    if (q != 0.0) {
      const double d = std::cos(q / 2) / std::sin(q / 2) + psi[i];
      const double ratio = (1.0 - d * d) / (1.0 + d * d);
      factor = ratio * ratio;
    }
    integrand[i] = factor * curvature[i] * curvature[i] * g * g;
  }
  return 0.5 * half_width * simpson(integrand, dt);
}

double helix_ratio_a(double q, double r) {
  return (2.0 * r + std::sin(2.0 * q) - std::sin(2.0 * (q - r))) / (2.0 * r + std::sin(2.0 * r));
}

double helix_ratio_b(double q, double r) {
  if (q == 0.0) return 1.0;
  const double c = std::cos(q / 2) / std::sin(q / 2);
  const double d = c + r;
  return (2.0 * std::atan(c) - 2.0 * std::atan(d) + d * (3.0 + d * d) / (1.0 + d * d) + (std::cos(q) - 2.0) * c) / r;
}

}  // namespace flatribbon
