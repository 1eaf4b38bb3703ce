#include "fblab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fblab {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep \n endings everywhere
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_field_csv(const ScalarField& f, const std::string& path) {
  auto out = open_out(path);
  const Grid2& g = f.grid();
  out << g.nx() << ',' << g.ny() << ',' << format_g17(g.xmin()) << ',' << format_g17(g.xmax())
      << ',' << format_g17(g.ymin()) << ',' << format_g17(g.ymax()) << '\n';
  for (double v : f.values()) out << format_g17(v) << '\n';
}

ScalarField read_field_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("empty field file: " + path);
  std::istringstream hs(header);
  std::string tok;
  std::vector<double> head;
  while (std::getline(hs, tok, ',')) head.push_back(std::stod(tok));
  if (head.size() != 6) throw std::runtime_error("bad field header: " + path);
  const int nx = static_cast<int>(head[0]);
  const int ny = static_cast<int>(head[1]);
  Grid2 grid(head[2], head[3], head[4], head[5], nx, ny);
  std::vector<double> values;
  values.reserve(grid.size());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    values.push_back(std::strtod(line.c_str(), nullptr));
  }
  return ScalarField(grid, std::move(values));
}

void write_mask_csv(const Grid2& grid, const std::vector<uint8_t>& flags, const std::string& path) {
  if (flags.size() != grid.size()) throw std::invalid_argument("mask size mismatch");
  auto out = open_out(path);
  out << grid.nx() << ',' << grid.ny() << ',' << format_g17(grid.xmin()) << ','
      << format_g17(grid.xmax()) << ',' << format_g17(grid.ymin()) << ','
      << format_g17(grid.ymax()) << '\n';
  for (uint8_t v : flags) out << (v ? '1' : '0') << '\n';
}

void write_label_csv(const Grid2& grid, const std::vector<int>& labels, const std::string& path) {
  if (labels.size() != grid.size()) throw std::invalid_argument("label size mismatch");
  auto out = open_out(path);
  out << grid.nx() << ',' << grid.ny() << ',' << format_g17(grid.xmin()) << ','
      << format_g17(grid.xmax()) << ',' << format_g17(grid.ymin()) << ','
      << format_g17(grid.ymax()) << '\n';
  for (int v : labels) out << v << '\n';
}

void write_profile_csv(const std::vector<double>& r, const std::vector<double>& value,
                       const std::string& value_name, const std::string& path) {
  if (r.size() != value.size()) throw std::invalid_argument("profile size mismatch");
  auto out = open_out(path);
  out << "r," << value_name << '\n';
  for (std::size_t k = 0; k < r.size(); ++k)
    out << format_g17(r[k]) << ',' << format_g17(value[k]) << '\n';
}

void write_table_csv(const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows, const std::string& path) {
  auto out = open_out(path);
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw std::invalid_argument("table row width mismatch");
    for (std::size_t c = 0; c < row.size(); ++c)
      out << format_g17(row[c]) << (c + 1 < row.size() ? "," : "\n");
  }
}

}  // namespace fblab
