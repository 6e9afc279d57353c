#include "flatribbon/commands.hpp"
#include "flatribbon/config.hpp"
#include "flatribbon/energy.hpp"
#include "flatribbon/ivp.hpp"
#include "flatribbon/ribbon.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace flatribbon;

namespace {

py::array_t<double> points_array(const std::vector<Vec3>& points) {
  py::array_t<double> out({static_cast<py::ssize_t>(points.size()), py::ssize_t{3}});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int k = 0; k < 3; ++k) view(i, k) = points[i][k];
  return out;
}

py::array_t<double> vector_array(const Vec3& v) { return py::array_t<double>(3, v.data()); }

py::dict report_dict(const EnergyReport& r) {
  py::dict d;
  d["value"] = r.value;
  d["method"] = to_string(r.method);
  d["half_width"] = r.half_width;
  d["error_estimate"] = r.error_estimate;
  return d;
}

py::tuple scalars_tuple(const DarbouxScalars& s) {
  return py::make_tuple(s.geodesic_curvature, s.normal_curvature, s.geodesic_torsion);
}

ThetaSolution solve(const AngleRhs& rhs, const ArcLengthCurve& curve, double q, double t0, std::size_t grid,
                    double tol) {
  return solve_theta(rhs, curve.length(), {t0, q}, grid, tol);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flat ribbons along space curves";

  py::register_exception<Error>(m, "FlatRibbonError", PyExc_RuntimeError);

  py::class_<ArcLengthCurve>(m, "Curve")
      .def_property_readonly("length", &ArcLengthCurve::length)
      .def("position", [](const ArcLengthCurve& c, double t) { return vector_array(c.position(t)); })
      .def("tangent", [](const ArcLengthCurve& c, double t) { return vector_array(c.tangent(t)); })
      .def("curvature", [](const ArcLengthCurve& c, double t) { return frenet_data(c, t).curvature; })
      .def("torsion", [](const ArcLengthCurve& c, double t) { return frenet_data(c, t).torsion; });

  py::class_<NormalField>(m, "NormalField")
      .def("__call__", [](const NormalField& f, double t) { return vector_array(f(t)); })
      .def_property_readonly("label", &NormalField::label);

  m.def("helix", [](double a, double b, double length) { return make_helix({a, b, length}); },
        py::arg("radius") = 1.0, py::arg("reduced_pitch") = 1.0, py::arg("length") = 0.0);
  m.def(
      "torus_knot",
      [](double major, double minor, int winding, std::size_t grid) {
        const TorusKnot k = make_torus_knot({major, minor, winding}, grid);
        return py::make_tuple(k.curve, k.torus_normal);
      },
      py::arg("major_radius") = 2.0, py::arg("minor_radius") = 1.0, py::arg("winding") = 3,
      py::arg("grid") = 4000, "Returns (curve, torus normal field).");

  m.def("principal_normal", &principal_normal_field, py::arg("curve"));
  m.def("frenet_rotation", &frenet_rotation_field, py::arg("curve"), py::arg("x"));
  m.def("rotation_minimizing", &rotation_minimizing_field, py::arg("curve"), py::arg("grid") = 4000,
        py::arg("offset") = 0.0);
  m.def("rotate", py::overload_cast<const ArcLengthCurve&, const NormalField&, double>(&rotate_field),
        py::arg("curve"), py::arg("field"), py::arg("angle"));
  m.def(
      "darboux_scalars",
      [](const ArcLengthCurve& c, const NormalField& f, double t) { return scalars_tuple(darboux_scalars(c, f, t)); },
      py::arg("curve"), py::arg("field"), py::arg("t"), "Returns (kg, kn, tg).");
  m.def(
      "rotate_scalars",
      [](double kg, double kn, double tg, double angle, double rate) {
        return scalars_tuple(rotate({kg, kn, tg}, angle, rate));
      },
      py::arg("kg"), py::arg("kn"), py::arg("tg"), py::arg("angle"), py::arg("angle_rate") = 0.0);
  m.def(
      "isometric_partner_angle", [](double kg, double kn) { return isometric_partner_angle({kg, kn, 0.0}); },
      py::arg("kg"), py::arg("kn"));

  py::class_<FlatRibbon>(m, "Ribbon")
      .def_property_readonly("half_width", &FlatRibbon::half_width)
      .def_property_readonly("curve", &FlatRibbon::curve)
      .def_property_readonly("normal", &FlatRibbon::normal)
      .def("point", [](const FlatRibbon& r, double t, double u) { return vector_array(r.point(t, u)); })
      .def("ruling", [](const FlatRibbon& r, double t) { return vector_array(r.ruling(t)); })
      .def("ruling_angle", [](const FlatRibbon& r, double t) { return ruling_angle(r, t); })
      .def("mu", [](const FlatRibbon& r, double t) { return r.slope().value(t); })
      .def(
          "mesh",
          [](const FlatRibbon& r, std::size_t rows, std::size_t cols) {
            const RibbonMesh mesh = tessellate(r, rows, cols);
            py::array_t<std::size_t> faces({static_cast<py::ssize_t>(mesh.triangles.size()), py::ssize_t{3}});
            auto view = faces.mutable_unchecked<2>();
            for (std::size_t i = 0; i < mesh.triangles.size(); ++i)
              for (int k = 0; k < 3; ++k) view(i, k) = mesh.triangles[i][k];
            return py::make_tuple(points_array(mesh.vertices), points_array(mesh.normals), faces);
          },
          py::arg("rows") = 800, py::arg("cols") = 20, "Returns (vertices, normals, faces).")
      .def(
          "flatness",
          [](const FlatRibbon& r, std::size_t rows, std::size_t cols) {
            const FlatnessReport f = flatness_residuals(r, rows, cols);
            py::dict d;
            d["normal_residual"] = f.normal_residual;
            d["developability_residual"] = f.developability_residual;
            d["gaussian_curvature"] = f.gaussian_curvature;
            return d;
          },
          py::arg("rows") = 800, py::arg("cols") = 20);

  m.def("construct_ribbon", &construct_ribbon, py::arg("curve"), py::arg("field"), py::arg("half_width"),
        py::arg("nodes") = kDefaultRibbonNodes);
  m.def("max_regular_width",
        py::overload_cast<const ArcLengthCurve&, const NormalField&, std::size_t>(&max_regular_width),
        py::arg("curve"), py::arg("field"), py::arg("nodes") = kDefaultRibbonNodes);

  m.def(
      "bending_energy",
      [](const FlatRibbon& r, const std::string& method, std::size_t t_nodes, std::size_t u_nodes) {
        if (method == "closed") return report_dict(bending_energy_closed(r, t_nodes));
        if (method == "quadrature") return report_dict(bending_energy_quadrature(r, t_nodes, u_nodes));
        if (method == "limit") return report_dict(limit_energy(r.slope(), r.half_width()));
        throw Error(ErrorCode::InvalidParams, "method must be closed, quadrature or limit");
      },
      py::arg("ribbon"), py::arg("method") = "closed", py::arg("t_nodes") = kDefaultRibbonNodes,
      py::arg("u_nodes") = 41);
  m.def(
      "limit_energy",
      [](const ArcLengthCurve& c, const NormalField& f, double w, std::size_t nodes) {
        return report_dict(limit_energy(c, f, w, nodes));
      },
      py::arg("curve"), py::arg("field"), py::arg("half_width"), py::arg("nodes") = kDefaultRibbonNodes);

  m.def(
      "solve_same_angle",
      [](const ArcLengthCurve& c, const NormalField& f, double q, double t0, std::size_t grid, double tol) {
        const ThetaSolution s = solve(same_angle_rhs(c, f), c, q, t0, grid, tol);
        return py::make_tuple(py::array(py::cast(s.grid())), py::array(py::cast(s.values())));
      },
      py::arg("curve"), py::arg("field"), py::arg("q"), py::arg("t0") = 0.0, py::arg("grid") = 2000,
      py::arg("tol") = 1e-9, "Returns (t, theta) on the solver grid.");
  m.def(
      "solve_prescribed",
      [](const ArcLengthCurve& c, const NormalField& f, double phi, double q, double t0, std::size_t grid,
         double tol) {
        const ThetaSolution s = solve(prescribed_angle_rhs(c, f, AnglePrescription::constant(phi)), c, q, t0, grid, tol);
        return py::make_tuple(py::array(py::cast(s.grid())), py::array(py::cast(s.values())));
      },
      py::arg("curve"), py::arg("field"), py::arg("phi"), py::arg("q"), py::arg("t0") = 0.0,
      py::arg("grid") = 2000, py::arg("tol") = 1e-9, "Returns (t, theta) on the solver grid.");

  m.def(
      "case_a_extrema",
      [](const ArcLengthCurve& c, const NormalField& f, double w) {
        const CaseAExtrema x = case_a_extrema(c, f, w);
        py::dict d;
        d["q_max"] = x.q_max;
        d["q_min"] = x.q_min;
        d["max_energy"] = x.max_energy;
        d["min_energy"] = x.min_energy;
        d["constant"] = x.constant;
        return d;
      },
      py::arg("curve"), py::arg("field"), py::arg("half_width"));
  m.def(
      "case_b_energy", [](const ArcLengthCurve& c, double q, double w) { return case_b_energy(c, q, w); },
      py::arg("curve"), py::arg("q"), py::arg("half_width"));
  m.def("helix_ratio_a", py::vectorize(&helix_ratio_a), py::arg("q"), py::arg("r"));
  m.def("helix_ratio_b", py::vectorize(&helix_ratio_b), py::arg("q"), py::arg("r"));

  m.def(
      "validate",
      [](const std::string& config_text) {
        std::vector<py::tuple> rows;
        for (const CheckResult& c : run_validation(parse_config(config_text)))
          rows.push_back(py::make_tuple(c.name, c.measured, c.bound, c.pass));
        return rows;
      },
      py::arg("config_text"), "Returns (name, measured, bound, pass) per check.");
  m.def(
      "run",
      [](const std::string& config_text) {
        std::ostringstream out, err;
        const int code = run_command(parse_config(config_text), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("config_text"), "Runs a configuration; returns (exit code, stdout, stderr).");
}
