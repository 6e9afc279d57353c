#include "flatribbon/config.hpp"

#include "flatribbon/common.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace flatribbon {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::Config, message); }

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double plain_number(const std::string& s, const std::string& whole) {
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) fail("not a number: '" + whole + "'");
  return value;
}

std::size_t parse_count(const std::string& text, std::size_t minimum) {
  const double v = parse_real(text);
  if (v != std::floor(v) || v < static_cast<double>(minimum) || v > 1e9)
    fail("expected an integer >= " + std::to_string(minimum) + ", got '" + text + "'");
  return static_cast<std::size_t>(v);
}

std::string number(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string number_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + number(values[i]);
  return out;
}

const char* curve_name(CurveKind k) {
  switch (k) {
    case CurveKind::Helix: return "helix";
    case CurveKind::TorusKnot: return "torus_knot";
    case CurveKind::Samples: return "samples";
  }
  return "";
}

const char* normal_name(NormalKind k) {
  switch (k) {
    case NormalKind::Principal: return "principal";
    case NormalKind::TorusNormal: return "torus_normal";
    case NormalKind::RotationMinimizing: return "rotation_minimizing";
    case NormalKind::FrenetRotation: return "frenet_rotation";
  }
  return "";
}

const char* fault_name(FaultKind k) {
  return k == FaultKind::None ? "none" : "ruling_perturbation";
}

void set(RunConfig& c, const std::string& section, const std::string& key, const std::string& value) {
  const std::string id = section.empty() ? key : section + "." + key;
  if (id == "mode") {
    c.mode = parse_mode(value);
  } else if (id == "curve.kind") {
    const std::string v = lower(value);
    if (v == "helix") c.curve.kind = CurveKind::Helix;
    else if (v == "torus_knot") c.curve.kind = CurveKind::TorusKnot;
    else if (v == "samples") c.curve.kind = CurveKind::Samples;
    else fail("unknown curve kind '" + value + "'");
  } else if (id == "curve.radius") {
    c.curve.radius = parse_real(value);
    if (!(c.curve.radius > 0.0)) fail("curve.radius must be positive");
  } else if (id == "curve.reduced_pitch") {
    c.curve.reduced_pitch = parse_real(value);
    if (c.curve.reduced_pitch < 0.0) fail("curve.reduced_pitch must be non-negative");
  } else if (id == "curve.length") {
    c.curve.length = parse_real(value);
    if (c.curve.length < 0.0) fail("curve.length must be non-negative");
  } else if (id == "curve.major_radius") {
    c.curve.major_radius = parse_real(value);
  } else if (id == "curve.minor_radius") {
    c.curve.minor_radius = parse_real(value);
    if (!(c.curve.minor_radius > 0.0)) fail("curve.minor_radius must be positive");
  } else if (id == "curve.winding") {
    const double v = parse_real(value);
    if (v != std::floor(v) || v == 0.0 || std::abs(v) > 1000) fail("curve.winding must be a nonzero integer");
    c.curve.winding = static_cast<int>(v);
  } else if (id == "curve.path") {
    c.curve.path = value;
  } else if (id == "curve.grid") {
    c.curve.grid = parse_count(value, 16);
  } else if (id == "normal.kind") {
    const std::string v = lower(value);
    if (v == "principal") c.normal.kind = NormalKind::Principal;
    else if (v == "torus_normal") c.normal.kind = NormalKind::TorusNormal;
    else if (v == "rotation_minimizing") c.normal.kind = NormalKind::RotationMinimizing;
    else if (v == "frenet_rotation") c.normal.kind = NormalKind::FrenetRotation;
    else fail("unknown normal kind '" + value + "'");
  } else if (id == "normal.offset") {
    c.normal.offset = parse_real(value);
  } else if (id == "ribbon.half_width") {
    c.ribbon.half_width = parse_real(value);
    if (!(c.ribbon.half_width > 0.0)) fail("ribbon.half_width must be positive");
  } else if (id == "ribbon.nodes") {
    c.ribbon.nodes = parse_count(value, 5);
  } else if (id == "ribbon.phi") {
    if (lower(value) == "from_base") {
      c.ribbon.phi.reset();
    } else {
      const double phi = parse_real(value);
      if (!(phi > 0.0 && phi < kPi)) fail("ribbon.phi must lie in (0, pi)");
      c.ribbon.phi = phi;
    }
  } else if (id == "ivp.q") {
    c.ivp.q = parse_real_list(value);
  } else if (id == "ivp.grid") {
    c.ivp.grid = parse_count(value, 2);
  } else if (id == "ivp.tol") {
    c.ivp.tol = parse_real(value);
    if (!(c.ivp.tol > 0.0)) fail("ivp.tol must be positive");
  } else if (id == "mesh.rows") {
    c.mesh.rows = parse_count(value, 2);
  } else if (id == "mesh.cols") {
    c.mesh.cols = parse_count(value, 2);
  } else if (id == "sweep.r") {
    c.sweep.r = parse_real_list(value);
    for (double r : c.sweep.r)
      if (!(r > 0.0)) fail("sweep.r values must be positive");
  } else if (id == "sweep.q_points") {
    c.sweep.q_points = parse_count(value, 2);
  } else if (id == "validate.fault") {
    const std::string v = lower(value);
    if (v == "none") c.validate.fault = FaultKind::None;
    else if (v == "ruling_perturbation") c.validate.fault = FaultKind::RulingPerturbation;
    else fail("unknown fault '" + value + "'");
  } else if (id == "validate.perturbation") {
    c.validate.perturbation = parse_real(value);
  } else if (id == "output.dir") {
    if (value.empty()) fail("output.dir must not be empty");
    c.output_dir = value;
  } else {
    fail("unknown key '" + id + "'");
  }
}

}  // namespace

double parse_real(const std::string& raw) {
  // Accepts decimal literals and the forms  [-][c[*]]pi[/d].
  const std::string text = trim(raw);
  if (text.empty()) fail("empty number");
  const auto at = lower(text).find("pi");
  double value = 0.0;
  if (at == std::string::npos) {
    value = plain_number(text, text);
  } else {
    std::string coefficient = trim(text.substr(0, at));
    std::string rest = trim(text.substr(at + 2));
    if (!coefficient.empty() && coefficient.back() == '*') coefficient = trim(coefficient.substr(0, coefficient.size() - 1));
    double c = 1.0;
    if (coefficient == "-") c = -1.0;
    else if (coefficient == "+" || coefficient.empty()) c = 1.0;
    else c = plain_number(coefficient, text);
    double d = 1.0;
    if (!rest.empty()) {
      if (rest.front() != '/') fail("not a number: '" + text + "'");
      d = plain_number(trim(rest.substr(1)), text);
      if (d == 0.0) fail("division by zero in '" + text + "'");
    }
    value = c * kPi / d;
  }
  if (!std::isfinite(value)) fail("non-finite number '" + text + "'");
  return value;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_real(item));
  if (out.empty()) fail("empty list");
  return out;
}

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Build: return "build";
    case RunMode::Solve: return "solve";
    case RunMode::Energy: return "energy";
    case RunMode::Sweep: return "sweep";
    case RunMode::Validate: return "validate";
  }
  return "";
}

RunMode parse_mode(const std::string& name) {
  const std::string v = lower(trim(name));
  for (RunMode m : {RunMode::Build, RunMode::Solve, RunMode::Energy, RunMode::Sweep, RunMode::Validate})
    if (v == to_string(m)) return m;
  fail("unknown mode '" + name + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::map<std::string, int> seen;
  std::string section;
  std::stringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("line " + std::to_string(number) + ": malformed section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      static const char* known[] = {"curve", "normal", "ribbon", "ivp", "mesh", "sweep", "validate", "output"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known))
        fail("line " + std::to_string(number) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("line " + std::to_string(number) + ": expected key = value");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    const std::string id = section.empty() ? key : section + "." + key;
    if (seen[id]++) fail("line " + std::to_string(number) + ": duplicate key '" + id + "'");
    try {
      set(c, section, key, value);
    } catch (const Error& e) {
      const std::string what = e.what();
      const auto colon = what.find(": ");
      fail("line " + std::to_string(number) + ": " + (colon == std::string::npos ? what : what.substr(colon + 2)));
    }
  }
  if (c.normal.kind == NormalKind::TorusNormal && c.curve.kind != CurveKind::TorusKnot)
    fail("normal.kind = torus_normal requires curve.kind = torus_knot");
  if (c.curve.kind == CurveKind::Samples && c.curve.path.empty()) fail("curve.kind = samples requires curve.path");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_config(const RunConfig& c) {
  std::ostringstream out;
  out << "mode = " << to_string(c.mode) << "\n";
  out << "\n[curve]\n";
  out << "kind = " << curve_name(c.curve.kind) << "\n";
  out << "radius = " << number(c.curve.radius) << "\n";
  out << "reduced_pitch = " << number(c.curve.reduced_pitch) << "\n";
  out << "length = " << number(c.curve.length) << "\n";
  out << "major_radius = " << number(c.curve.major_radius) << "\n";
  out << "minor_radius = " << number(c.curve.minor_radius) << "\n";
  out << "winding = " << c.curve.winding << "\n";
  if (!c.curve.path.empty()) out << "path = " << c.curve.path << "\n";
  out << "grid = " << c.curve.grid << "\n";
  out << "\n[normal]\n";
  out << "kind = " << normal_name(c.normal.kind) << "\n";
  out << "offset = " << number(c.normal.offset) << "\n";
  out << "\n[ribbon]\n";
  out << "half_width = " << number(c.ribbon.half_width) << "\n";
  out << "nodes = " << c.ribbon.nodes << "\n";
  out << "phi = " << (c.ribbon.phi ? number(*c.ribbon.phi) : std::string("from_base")) << "\n";
  out << "\n[ivp]\n";
  out << "q = " << number_list(c.ivp.q) << "\n";
  out << "grid = " << c.ivp.grid << "\n";
  out << "tol = " << number(c.ivp.tol) << "\n";
  out << "\n[mesh]\n";
  out << "rows = " << c.mesh.rows << "\n";
  out << "cols = " << c.mesh.cols << "\n";
  out << "\n[sweep]\n";
  out << "r = " << number_list(c.sweep.r) << "\n";
  out << "q_points = " << c.sweep.q_points << "\n";
  out << "\n[validate]\n";
  out << "fault = " << fault_name(c.validate.fault) << "\n";
  out << "perturbation = " << number(c.validate.perturbation) << "\n";
  out << "\n[output]\n";
  out << "dir = " << c.output_dir << "\n";
  return out.str();
}

std::vector<double> default_torus_knot_angles() { return {-kPi / 2, -kPi / 3, -kPi / 6, 0.0}; }

RunConfig torus_knot_preset() {
  RunConfig c;
  c.curve.kind = CurveKind::TorusKnot;
  c.normal.kind = NormalKind::TorusNormal;
  c.ribbon.half_width = 0.25;
  c.ivp.q = default_torus_knot_angles();
  return c;
}

}  // namespace flatribbon
