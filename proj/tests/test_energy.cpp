#include "flatribbon/energy.hpp"
#include "flatribbon/ivp.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace flatribbon;

namespace {

// Fundamental forms of sigma from finite differences of the surface map.
FundamentalForms forms_by_differences(const FlatRibbon& r, double t, double u) {
  auto sigma_t = [&](double s, double v) { return oracle::derivative([&](double x) { return r.point(x, v); }, s, 1e-3); };
  auto sigma_u = [&](double s, double v) { return oracle::derivative([&](double y) { return r.point(s, y); }, v, 1e-3); };
  const Vec3 st = sigma_t(t, u), su = sigma_u(t, u);
  const Vec3 n = st.cross(su).normalized();
  const Vec3 stt = oracle::derivative([&](double s) { return sigma_t(s, u); }, t, 1e-3);
  const Vec3 stu = oracle::derivative([&](double v) { return sigma_t(t, v); }, u, 1e-3);
  const Vec3 suu = oracle::derivative([&](double v) { return sigma_u(t, v); }, u, 1e-3);
  return {st.dot(st), st.dot(su), su.dot(su), stt.dot(n), stu.dot(n), suu.dot(n)};
}

ScalarSamples synthetic(const std::function<DarbouxScalars(double)>& f, double length, std::size_t nodes) {
  ScalarSamples s;
  s.grid = uniform_grid(0.0, length, nodes);
  s.step = s.grid[1] - s.grid[0];
  for (double t : s.grid) s.values.push_back(f(t));
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("fundamental forms agree with differences of the surface map") {
  const TorusKnot knot = make_torus_knot({});
  const FlatRibbon r = construct_ribbon(knot.curve, knot.torus_normal, 0.4);
  const double spacing = knot.curve.length() / 2000.0;
  for (int node : {100, 777, 1500}) {
    const double t = (node + 0.5) * spacing;
    for (double u : {-0.3, 0.0, 0.35}) {
      const FundamentalForms f = fundamental_forms(r, t, u);
      const FundamentalForms d = forms_by_differences(r, t, u);
      CHECK(std::abs(f.E - d.E) < 1e-7);
      CHECK(std::abs(f.F - d.F) < 1e-7);
      CHECK(std::abs(f.G - d.G) < 1e-7);
      CHECK(std::abs(f.e - d.e) < 1e-6);
      CHECK(std::abs(d.f) < 1e-6);
      CHECK(std::abs(d.g) < 1e-6);
      const RibbonSample s = r.sample(t);
      CHECK(area_element(f) == doctest::Approx(1.0 + u * s.regularity_rate()).epsilon(1e-10));
      const double h = -(1.0 + s.slope * s.slope) * s.scalars.normal_curvature / (2.0 * (1.0 + u * s.regularity_rate()));
      CHECK(std::abs(mean_curvature(f) + h) < 1e-12);
    }
  }
}

TEST_CASE("forms at u = 0 and on the helix rectifying developable") {
  const ArcLengthCurve helix = make_helix({});
  const FlatRibbon r = construct_ribbon(helix, principal_normal_field(helix), 0.2);
  for (double u : {0.0, -0.15, 0.2}) {
    const FundamentalForms f = fundamental_forms(r, 1.0, u);
    CHECK(f.E == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.F == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f.G == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.e == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(area_element(f) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean_curvature(f) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("regular domain and metric errors") {
  RibbonSample s;
  s.scalars = {1.0, 1.0, 0.0};
  s.slope = 0.0;
  s.slope_rate = 0.0;  // lambda = -1
  CHECK_NOTHROW(fundamental_forms(s, 0.5));
  try {
    (void)fundamental_forms(s, 1.0);
    FAIL("expected OutsideRegularDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutsideRegularDomain);
  }
  try {
    (void)mean_curvature(FundamentalForms{1.0, 1.0, 1.0, 0.0, 0.0, 0.0});
    FAIL("expected DegenerateMetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateMetric);
  }
}

TEST_CASE("helix rectifying energy is wL/(2a^2)") {
  for (auto [a, b, w] : {std::tuple{1.0, 1.0, 0.1}, std::tuple{3.0, 4.0, 0.05}, std::tuple{1.0, 1.0, 1e-3}}) {
    const ArcLengthCurve helix = make_helix({a, b, 0.0});
    const FlatRibbon r = construct_ribbon(helix, principal_normal_field(helix), w);
    const double exact = w * helix.length() / (2.0 * a * a);
    const EnergyReport closed = bending_energy_closed(r);
    CHECK(closed.method == EnergyMethod::SpecialCaseLambdaZero);
    CHECK(rel(closed.value, exact) <= 1e-12);
    CHECK(rel(bending_energy_quadrature(r).value, exact) <= 1e-8);
    CHECK(rel(limit_energy(helix, principal_normal_field(helix), w).value, exact) <= 1e-12);
    CHECK(rel(case_b_energy(helix, 0.0, w), exact) <= 1e-12);
  }
}

TEST_CASE("series branch of log((1+x)/(1-x))/x is continuous") {
  for (double x : {1e-9, 5e-7, kLambdaSeriesThreshold}) {
    const double series = 2.0 + 2.0 / 3.0 * x * x + 2.0 / 5.0 * std::pow(x, 4);
    CHECK(rel(log_ratio_over_x(x), series) < 1e-10);
  }
  CHECK(rel(log_ratio_over_x(1e-9), log_ratio_over_x(0.0)) < 1e-12);
  CHECK(rel(log_ratio_over_x(0.5), std::log(3.0) / 0.5) < 1e-15);
  CHECK(rel(log_ratio_over_x(-0.5), log_ratio_over_x(0.5)) < 1e-15);
}

TEST_CASE("closed form equals the double quadrature on randomized ribbons") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-0.3, 0.3), major(2.0, 3.0), minor(0.6, 1.0);
  int cases = 0;
  for (int attempt = 0; attempt < 30 && cases < 10; ++attempt) {
    const TorusKnotParams p{major(rng), minor(rng), attempt % 2 ? 2 : 3};
    const TorusKnot knot = make_torus_knot(p);
    const NormalField n = rotate_field(knot.curve, knot.torus_normal, angle(rng));
    try {
      const double w_max = max_regular_width(knot.curve, n);
      const FlatRibbon r = construct_ribbon(knot.curve, n, 0.5 * w_max);
      const double closed = bending_energy_closed(r).value;
      const EnergyReport quad = bending_energy_quadrature(r, 2001, 41);
      CHECK(rel(quad.value, closed) <= 1e-6);
      CHECK(quad.value > 0.0);
      ++cases;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SingularRuling);
    }
  }
  CHECK(cases == 10);
}

TEST_CASE("finite-width energy approaches the limit at second order") {
  const TorusKnot knot = make_torus_knot({});
  const RulingSlope slope = mu_field(knot.curve, knot.torus_normal);
  const double w_max = max_regular_width(slope);
  const double e0 = limit_energy(slope, 1.0).value;
  auto e = [&](double w) {
    return bending_energy_closed(FlatRibbon(knot.curve, knot.torus_normal, w, slope)).value / w;
  };
  const double ratio = (e(w_max / 8) - e0) / (e(w_max / 16) - e0);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
  CHECK(e(w_max / 8) > e0);
}

TEST_CASE("case A energy") {
  const double w = 0.2;
  // kg = sin t, kn = 2: B = 0, A < 0, maximum at q = 0.
  const ScalarSamples b_zero = synthetic([](double t) { return DarbouxScalars{std::sin(t), 2.0, 0.0}; }, 2 * kPi, 2001);
  const CaseAExtrema x = case_a_extrema(b_zero, w);
  CHECK(std::abs(x.b) < 1e-12);
  CHECK(x.a == doctest::Approx(kPi - 8.0 * kPi).epsilon(1e-10));
  CHECK(x.q_max == 0.0);
  CHECK(x.q_min == doctest::Approx(kPi / 2));
  CHECK(x.max_energy == doctest::Approx(0.5 * w * 8.0 * kPi).epsilon(1e-10));
  CHECK(x.min_energy == doctest::Approx(0.5 * w * kPi).epsilon(1e-10));
  CHECK(case_a_energy(b_zero, 0.0, w) == doctest::Approx(x.max_energy).epsilon(1e-12));
  CHECK(case_a_energy(b_zero, kPi / 2, w) == doctest::Approx(x.min_energy).epsilon(1e-12));

  // kg = cos t, kn = sin t: A = B = 0, constant (w/4) integral kappa^2.
  const ScalarSamples flat = synthetic([](double t) { return DarbouxScalars{std::cos(t), std::sin(t), 0.0}; }, 2 * kPi, 2001);
  const CaseAExtrema c = case_a_extrema(flat, w);
  CHECK(c.constant);
  CHECK(c.max_energy == doctest::Approx(0.25 * w * 2.0 * kPi).epsilon(1e-12));
  for (double q : {0.0, 1.0, 2.5}) CHECK(case_a_energy(flat, q, w) == doctest::Approx(c.max_energy).epsilon(1e-10));

  const ScalarSamples twisted = synthetic([](double) { return DarbouxScalars{1.0, 1.0, 0.1}; }, 1.0, 11);
  try {
    (void)case_a_energy(twisted, 0.0, w);
    FAIL("expected NotCaseA");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCaseA);
  }
}

TEST_CASE("case A extrema on the helix family agree with a refined scan") {
  const double w = 0.1;
  const ArcLengthCurve helix = make_helix({});
  const NormalField n = rotate_field(helix, principal_normal_field(helix), closed_form_helix_pi2(1.0, 1.0));
  const ScalarSamples s = sample_scalars(helix, n, 2001);
  const CaseAExtrema x = case_a_extrema(s, w);
  for (double q : x.q_candidates) {
    const double h = 1e-5;
    const double slope = (case_a_energy(s, q + h, w) - case_a_energy(s, q - h, w)) / (2 * h);
    CHECK(std::abs(slope) < 1e-8);
  }
  CHECK(case_a_energy(s, x.q_max, w) == doctest::Approx(x.max_energy).epsilon(1e-12));
  CHECK(case_a_energy(s, x.q_min, w) == doctest::Approx(x.min_energy).epsilon(1e-12));
  CHECK(case_a_energy(s, 0.0, w) == doctest::Approx(limit_energy(helix, n, w).value).epsilon(1e-10));
}

TEST_CASE("case B energy ratio and the helix ratio formulas") {
  CHECK(helix_ratio_b(kPi, 1.0) == doctest::Approx(2.0 - kPi / 2).epsilon(1e-12));
  for (double r : {0.5, 1.0, 7.0}) CHECK(helix_ratio_a(0.0, r) == 1.0);
  const double a = 1.0, b = 1.0, w = 0.05;
  for (double r : {1.0, 2.0, 3.0, 4.0}) {
    const ArcLengthCurve helix = make_helix({a, b, r * (a * a + b * b) / b});
    const double base = w * helix.length() / (2 * a * a);
    for (int k = 1; k < 64; k += 5) {
      const double q = 2.0 * kPi * k / 64;
      CHECK(rel(case_b_energy(helix, q, w) / base, helix_ratio_b(q, r)) <= 1e-6);
    }
  }
  for (int k = 0; k < 64; ++k) {
    const double q = 2.0 * kPi * k / 64;
    CHECK(std::abs(helix_ratio_a(q, 1e4) - 1.0) < 1e-3);
    if (k) CHECK(std::abs(helix_ratio_b(q, 1e4) - 1.0) < 1e-3);
  }
  CHECK_THROWS_AS(case_b_energy(make_helix({}), -0.1, w), Error);
}

TEST_CASE("additive and ratio energy bounds") {
  const double w = 0.1;
  const ArcLengthCurve helix = make_helix({});
  const NormalField p = principal_normal_field(helix);
  const EnergyBound same = energy_bound(helix, p, p, w);
  CHECK(same.additive_holds);
  CHECK(same.additive_bound == doctest::Approx(same.base_energy).epsilon(1e-14));
  REQUIRE(same.ratio_bound.has_value());
  CHECK(*same.ratio_bound == doctest::Approx(1.0));

  const AngleFunction psi = torsion_integral(helix);
  for (double q : {0.5, kPi, 5.0}) {
    const NormalField v = rotate_field(helix, p, closed_form_case_b(q, psi));
    const EnergyBound bound = energy_bound(helix, p, v, w);
    CHECK(bound.additive_holds);
    CHECK(bound.ratio_holds);
    CHECK(bound.other_energy == doctest::Approx(case_b_energy(helix, q, w)).epsilon(1e-8));
  }
  try {
    (void)energy_bound(helix, p, frenet_rotation_field(helix, 0.5), w);
    FAIL("expected RulingAngleMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RulingAngleMismatch);
  }
}

TEST_CASE("energies vanish for a planar strip") {
  CurveSpec circle;
  circle.position = [](double p) { return Vec3(std::cos(p), std::sin(p), 0.0); };
  circle.start = 0.0;
  circle.end = 3.0;
  const ArcLengthCurve c = arc_length_reparametrize(circle, 400);
  const NormalField up([](double) { return Vec3(0, 0, 1); }, [](double) { return Vec3(0, 0, 0); }, c.length(), "up");
  const FlatRibbon r = construct_ribbon(c, up, 0.2);
  CHECK(bending_energy_closed(r).value == 0.0);
  CHECK(bending_energy_quadrature(r).value == 0.0);
  CHECK(limit_energy(r.slope(), 0.2).value == 0.0);
}
