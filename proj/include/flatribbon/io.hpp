#pragma once

#include "flatribbon/ribbon.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace flatribbon {

/// "%.17g" in the C locale.
std::string format_real(double value);

/// Rows of mixed text and numbers written as CSV with a header row and '\n'
/// line endings. Numbers use format_real.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  class Row {
   public:
    Row& operator<<(double v);
    Row& operator<<(const std::string& v);
    Row& operator<<(const char* v) { return *this << std::string(v); }

   private:
    friend class CsvTable;
    std::vector<std::string> cells_;
  };

  Row& row();
  std::string str() const;
  void write(const std::filesystem::path& path) const;
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

/// ASCII Wavefront OBJ: v, vn and triangular f records with 1-based
/// vertex//normal indices. Throws Io on failure and InvalidParams on
/// non-finite coordinates.
std::string format_obj(const RibbonMesh& mesh);
void write_obj(const RibbonMesh& mesh, const std::filesystem::path& path);

/// Writes text to a file, creating parent directories. Throws Io.
void write_text(const std::filesystem::path& path, const std::string& text);

/// Reads (t, x, y, z) rows; a non-numeric first line is treated as a header.
void read_samples_csv(const std::filesystem::path& path, std::vector<double>& params, std::vector<Vec3>& points);

}  // namespace flatribbon
