#include "flatribbon/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace flatribbon {

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

CsvTable::Row& CsvTable::Row::operator<<(double v) {
  cells_.push_back(format_real(v));
  return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(const std::string& v) {
  cells_.push_back(v);
  return *this;
}

CsvTable::Row& CsvTable::row() { return rows_.emplace_back(); }

std::string CsvTable::str() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const Row& r : rows_) line(r.cells_);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

std::string format_obj(const RibbonMesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 120);
  out += "# flat ribbon, " + std::to_string(mesh.rows) + " x " + std::to_string(mesh.cols) + " vertices\n";
  auto vec = [&out](const char* tag, const Vec3& v) {
    if (!v.allFinite()) throw Error(ErrorCode::InvalidParams, "non-finite mesh coordinate");
    out += tag;
    for (int k = 0; k < 3; ++k) out += ' ' + format_real(v[k]);
    out += '\n';
  };
  for (const Vec3& v : mesh.vertices) vec("v", v);
  for (const Vec3& n : mesh.normals) vec("vn", n);
  for (const auto& tri : mesh.triangles) {
    out += 'f';
    for (std::size_t k : tri) {
      const std::string i = std::to_string(k + 1);
      out += ' ' + i + "//" + i;
    }
    out += '\n';
  }
  return out;
}

void write_obj(const RibbonMesh& mesh, const std::filesystem::path& path) { write_text(path, format_obj(mesh)); }

void read_samples_csv(const std::filesystem::path& path, std::vector<double>& params, std::vector<Vec3>& points) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read samples '" + path.string() + "'");
  params.clear();
  points.clear();
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream fields(line);
    double t, x, y, z;
    if (!(fields >> t >> x >> y >> z)) {
      if (params.empty() && number == 1) continue;
      throw Error(ErrorCode::Config, "samples '" + path.string() + "' line " + std::to_string(number) +
                                         ": expected t,x,y,z");
    }
    params.push_back(t);
    points.emplace_back(x, y, z);
  }
  if (params.size() < 4) throw Error(ErrorCode::Config, "samples file needs at least four rows");
}

}  // namespace flatribbon
