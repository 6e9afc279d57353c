#include "flatribbon/commands.hpp"
#include "flatribbon/config.hpp"
#include "flatribbon/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace flatribbon;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("flatribbon_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("config round-trips through its normalized form") {
  const std::string text = R"(
# comment
mode = energy
[curve]
kind = torus_knot
winding = 2
major_radius = 2.5
[normal]
kind = rotation_minimizing
offset = pi/7
[ribbon]
half_width = 0.125
phi = 3*pi/8
[ivp]
q = -pi/2, 0.1, 2
[sweep]
r = 1, 10
[output]
dir = somewhere
)";
  const RunConfig c = parse_config(text);
  CHECK(c.mode == RunMode::Energy);
  CHECK(c.curve.kind == CurveKind::TorusKnot);
  CHECK(c.curve.winding == 2);
  CHECK(c.normal.offset == doctest::Approx(kPi / 7));
  REQUIRE(c.ribbon.phi.has_value());
  CHECK(*c.ribbon.phi == doctest::Approx(3 * kPi / 8));
  CHECK(c.ivp.q.size() == 3);
  const std::string normalized = format_config(c);
  CHECK(parse_config(normalized) == c);
  CHECK(format_config(parse_config(normalized)) == normalized);
  CHECK(format_config(RunConfig{}) == format_config(parse_config(format_config(RunConfig{}))));
}

TEST_CASE("config errors") {
  for (const char* bad : {"bogus = 1", "[nowhere]\nx = 1", "[ribbon]\nhalf_width = -1", "[ribbon]\nhalf_width = nan",
                          "[ribbon]\nhalf_width = 1e999", "[ivp]\nq = 1, , 2", "[curve]\nkind = spiral",
                          "[normal]\nkind = torus_normal", "mode = build\nmode = solve", "[ribbon]\nphi = 4",
                          "no equals sign", "[curve]\nkind = samples"}) {
    try {
      (void)parse_config(bad);
      FAIL("accepted: " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Config);
    }
  }
  CHECK_THROWS_AS(load_config("/nonexistent/config"), Error);
}

TEST_CASE("numbers") {
  CHECK(parse_real("-pi/2") == -kPi / 2);
  CHECK(parse_real("2*pi") == 2 * kPi);
  CHECK(parse_real(" 1.5e-3 ") == 1.5e-3);
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(2.0) == "2");
}

TEST_CASE("csv and obj formatting") {
  CsvTable t({"a", "b"});
  t.row() << 1.0 << "x";
  t.row() << kPi << "y";
  CHECK(t.str() == "a,b\n1,x\n3.1415926535897931,y\n");

  const ArcLengthCurve helix = make_helix({});
  const FlatRibbon r = construct_ribbon(helix, principal_normal_field(helix), 0.1);
  const RibbonMesh mesh = tessellate(r, 10, 2);
  const auto obj = lines(format_obj(mesh));
  std::size_t v = 0, vn = 0, f = 0;
  for (const std::string& l : obj) {
    if (l.rfind("v ", 0) == 0) ++v;
    if (l.rfind("vn ", 0) == 0) ++vn;
    if (l.rfind("f ", 0) == 0) {
      ++f;
      std::stringstream s(l.substr(2));
      for (std::string item; s >> item;) {
        const std::size_t idx = std::stoul(item.substr(0, item.find('/')));
        CHECK(idx >= 1);
        CHECK(idx <= mesh.vertices.size());
      }
    }
  }
  CHECK(v == 20);
  CHECK(vn == 20);
  CHECK(f == 18);
}

TEST_CASE("build on the helix writes a two-column rectifying strip, deterministically") {
  RunConfig c;
  c.mode = RunMode::Build;
  c.mesh.rows = 50;
  c.mesh.cols = 2;
  c.ivp.q = {0.0};
  c.output_dir = scratch("build_a").string();
  std::ostringstream out, err;
  REQUIRE(run_command(c, out, err) == 0);
  const std::string obj = slurp(fs::path(c.output_dir) / "ribbon_q0.obj");
  std::size_t vertices = 0;
  for (const std::string& l : lines(obj)) vertices += l.rfind("v ", 0) == 0;
  CHECK(vertices == 2 * 50);
  const auto residuals = lines(slurp(fs::path(c.output_dir) / "residuals_q0.csv"));
  CHECK(residuals.front() == "t,normal_residual,developability_residual,gaussian_curvature");
  CHECK(residuals.size() == 51);

  RunConfig again = c;
  again.output_dir = scratch("build_b").string();
  REQUIRE(run_command(again, out, err) == 0);
  for (const char* name : {"ribbon_q0.obj", "residuals_q0.csv", "summary.csv", "scalars.csv"})
    CHECK(slurp(fs::path(c.output_dir) / name) == slurp(fs::path(again.output_dir) / name));
}

TEST_CASE("exit codes") {
  std::ostringstream out, err;
  RunConfig wide = torus_knot_preset();
  wide.mode = RunMode::Build;
  wide.ribbon.half_width = 5.0;
  wide.output_dir = scratch("wide").string();
  CHECK(run_command(wide, out, err) == 3);
  CHECK(err.str().find("w_max") != std::string::npos);

  RunConfig io;
  io.mode = RunMode::Sweep;
  io.output_dir = "/proc/not/writable";
  CHECK(run_command(io, out, err) == 4);

  RunConfig missing;
  missing.curve.kind = CurveKind::Samples;
  missing.curve.path = "/nonexistent/samples.csv";
  CHECK(run_command(missing, out, err) == 4);
}

TEST_CASE("sweep tables") {
  RunConfig c;
  c.mode = RunMode::Sweep;
  c.output_dir = scratch("sweep").string();
  std::ostringstream out, err;
  REQUIRE(run_command(c, out, err) == 0);
  const auto a = lines(slurp(fs::path(c.output_dir) / "ratio_a_r1.csv"));
  REQUIRE(a.size() == 513);
  CHECK(a[0] == "q,ratio");
  CHECK(a[1] == "0,1");
  const auto b = lines(slurp(fs::path(c.output_dir) / "ratio_b_r1.csv"));
  const std::string& mid = b[1 + 256];
  const double q = std::stod(mid.substr(0, mid.find(',')));
  const double ratio = std::stod(mid.substr(mid.find(',') + 1));
  CHECK(q == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(std::abs(ratio - (2.0 - kPi / 2)) <= 1e-10);
}

TEST_CASE("validate passes by default and catches an injected fault") {
  RunConfig c;
  c.mode = RunMode::Validate;
  c.output_dir = scratch("validate").string();
  const std::vector<CheckResult> checks = run_validation(c);
  for (const CheckResult& r : checks) CHECK_MESSAGE(r.pass, r.name);
  std::ostringstream out, err;
  CHECK(run_command(c, out, err) == 0);
  CHECK(lines(slurp(fs::path(c.output_dir) / "validate.csv")).size() == checks.size() + 1);

  c.validate.fault = FaultKind::RulingPerturbation;
  CHECK(run_command(c, out, err) == 1);
}

TEST_CASE("samples curve from CSV") {
  const fs::path dir = scratch("samples");
  fs::create_directories(dir);
  std::string csv = "t,x,y,z\n";
  for (int i = 0; i <= 100; ++i) {
    const double s = 4.0 * kPi * i / 100;
    csv += format_real(s) + "," + format_real(std::cos(s)) + "," + format_real(std::sin(s)) + "," +
           format_real(0.5 * s) + "\n";
  }
  write_text(dir / "helix.csv", csv);
  RunConfig c;
  c.curve.kind = CurveKind::Samples;
  c.curve.path = (dir / "helix.csv").string();
  const Scene scene = make_scene(c);
  CHECK(scene.curve.length() == doctest::Approx(4.0 * kPi * std::sqrt(1.25)).epsilon(1e-4));
  CHECK(scene.label == "samples/principal");
}
