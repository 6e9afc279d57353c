#include "flatribbon/darboux.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace flatribbon;

namespace {

// Darboux scalars from finite differences of the frame vectors alone.
DarbouxScalars scalars_by_differences(const ArcLengthCurve& c, const NormalField& n, double t) {
  auto frame = [&](double s) { return darboux_frame(c, n, s); };
  const DarbouxFrame f = frame(t);
  const Vec3 dT = oracle::derivative([&](double s) { return frame(s).tangent; }, t, 1e-2);
  const Vec3 dH = oracle::derivative([&](double s) { return frame(s).side; }, t, 1e-2);
  return {dT.dot(f.side), dT.dot(f.normal), dH.dot(f.normal)};
}

void check_close(const DarbouxScalars& a, const DarbouxScalars& b, double tol) {
  CHECK(std::abs(a.geodesic_curvature - b.geodesic_curvature) <= tol);
  CHECK(std::abs(a.normal_curvature - b.normal_curvature) <= tol);
  CHECK(std::abs(a.geodesic_torsion - b.geodesic_torsion) <= tol);
}

}  // namespace

TEST_CASE("principal normal frame of a helix") {
  const double a = 1.0, b = 1.0;
  const ArcLengthCurve helix = make_helix({a, b, 0.0});
  const NormalField p = principal_normal_field(helix);
  for (double t : {0.0, 2.0, 8.0}) {
    const DarbouxScalars s = darboux_scalars(helix, p, t);
    CHECK(std::abs(s.geodesic_curvature) < 1e-12);
    CHECK(s.normal_curvature == doctest::Approx(a / (a * a + b * b)).epsilon(1e-12));
    CHECK(s.geodesic_torsion == doctest::Approx(b / (a * a + b * b)).epsilon(1e-12));
  }
}

TEST_CASE("scalars agree with finite differences of the frame") {
  const TorusKnot knot = make_torus_knot({});
  const NormalField rmf = rotation_minimizing_field(knot.curve, 4000, 0.3);
  for (double t : {1.0, 6.5, 13.0}) {
    check_close(darboux_scalars(knot.curve, knot.torus_normal, t),
                scalars_by_differences(knot.curve, knot.torus_normal, t), 1e-7);
    check_close(darboux_scalars(knot.curve, rmf, t), scalars_by_differences(knot.curve, rmf, t), 1e-5);
  }
}

TEST_CASE("frame derivative reproduces the differentiated frame") {
  const TorusKnot knot = make_torus_knot({});
  const double t = 4.2;
  const DarbouxFrame f = darboux_frame(knot.curve, knot.torus_normal, t);
  const FrameDerivative d = frame_derivative(f, darboux_scalars(knot.curve, knot.torus_normal, t));
  auto frame = [&](double s) { return darboux_frame(knot.curve, knot.torus_normal, s); };
  CHECK((d.tangent - oracle::derivative([&](double s) { return frame(s).tangent; }, t, 1e-2)).norm() < 1e-7);
  CHECK((d.side - oracle::derivative([&](double s) { return frame(s).side; }, t, 1e-2)).norm() < 1e-7);
  CHECK((d.normal - oracle::derivative([&](double s) { return frame(s).normal; }, t, 1e-2)).norm() < 1e-7);
}

TEST_CASE("rotated field scalars follow the rotation law") {
  const TorusKnot knot = make_torus_knot({});
  const AngleFunction theta{[](double t) { return 0.3 * std::sin(t); }, [](double t) { return 0.3 * std::cos(t); }};
  const NormalField v = rotate_field(knot.curve, knot.torus_normal, theta);
  for (double t : {0.5, 3.3, 17.0}) {
    const DarbouxScalars predicted = rotate(darboux_scalars(knot.curve, knot.torus_normal, t), theta(t), theta.rate(t));
    check_close(darboux_scalars(knot.curve, v, t), predicted, 1e-12);
    check_close(predicted, scalars_by_differences(knot.curve, v, t), 1e-7);
  }
}

TEST_CASE("property: rotation is a group action and preserves curvature") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const DarbouxScalars s{u(rng), u(rng), u(rng)};
    const double a1 = u(rng), r1 = u(rng), a2 = u(rng), r2 = u(rng);
    check_close(rotate(rotate(s, a1, r1), a2, r2), rotate(s, a1 + a2, r1 + r2), 1e-12);
    const DarbouxScalars r = rotate(s, a1, r1);
    CHECK(std::abs(std::hypot(r.geodesic_curvature, r.normal_curvature) -
                   std::hypot(s.geodesic_curvature, s.normal_curvature)) < 1e-12);
    check_close(rotate(s, 0.0, 0.0), s, 0.0);
  }
}

TEST_CASE("property: the isometric partner keeps geodesic curvature") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const DarbouxScalars s{u(rng), u(rng), u(rng)};
    const DarbouxScalars r = rotate(s, isometric_partner_angle(s), 0.0);
    CHECK(std::abs(r.geodesic_curvature - s.geodesic_curvature) < 1e-12);
    CHECK(std::abs(r.normal_curvature + s.normal_curvature) < 1e-12);
  }
  CHECK_THROWS_AS(isometric_partner_angle({0.0, 0.0, 1.0}), Error);
}

TEST_CASE("frenet rotation field has the Frenet torsion as geodesic torsion") {
  const ArcLengthCurve helix = make_helix({2.0, 0.5, 0.0});
  for (double x : {0.0, 0.4, 2.0}) {
    const NormalField f = frenet_rotation_field(helix, x);
    for (double t : {0.1, 3.0, 9.0}) {
      const DarbouxScalars s = darboux_scalars(helix, f, t);
      const FrenetData fd = frenet_data(helix, t);
      CHECK(std::abs(s.geodesic_torsion - *fd.torsion) < 1e-8);
      CHECK(std::abs(s.normal_curvature - fd.curvature * std::cos(x)) < 1e-10);
    }
  }
}

TEST_CASE("rotation minimizing field has no geodesic torsion") {
  const TorusKnot knot = make_torus_knot({});
  const NormalField rmf = rotation_minimizing_field(knot.curve);
  double worst = 0.0;
  for (double t = 0.0; t < knot.curve.length(); t += 0.5) {
    worst = std::max(worst, std::abs(darboux_scalars(knot.curve, rmf, t).geodesic_torsion));
    const Vec3 dn = oracle::derivative([&](double s) { return rmf(s); }, t + 0.01, 1e-3);
    CHECK(std::abs(dn.dot(darboux_frame(knot.curve, rmf, t + 0.01).side)) < 1e-6);
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("non-orthogonal normal fields are rejected") {
  const ArcLengthCurve helix = make_helix({});
  const NormalField tilted([&](double t) { return Vec3((helix.tangent(t) + Vec3(0, 0, 1)).normalized()); }, {},
                           helix.length(), "tilted");
  try {
    (void)darboux_scalars(helix, tilted, 1.0);
    FAIL("expected NonOrthogonalNormal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonOrthogonalNormal);
  }
}

TEST_CASE("principal normal requires curvature") {
  CurveSpec line;
  line.position = [](double p) { return Vec3(p, 2.0 * p, 0.0); };
  line.start = 0.0;
  line.end = 1.0;
  const ArcLengthCurve c = arc_length_reparametrize(line, 100);
  try {
    (void)principal_normal_field(c);
    FAIL("expected VanishingCurvature");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VanishingCurvature);
  }
}
