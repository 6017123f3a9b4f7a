#include "mfield/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>
#include <string>

#include "mfield/errors.hpp"

namespace mfield {

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

namespace {

template <class T>
void put(std::ostream& os, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  os.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& is) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw ConfigError("read_binary: truncated file");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream os(path, mode);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_binary_values(const std::filesystem::path& path, const CartesianGrid& grid,
                         const std::vector<double>& values) {
  if (values.size() != grid.size()) throw DomainError("write_binary: size mismatch");
  auto os = open_out(path, std::ios::binary | std::ios::trunc);
  put<std::int64_t>(os, grid.dim());
  put<std::int64_t>(os, grid.cells());
  put<double>(os, grid.half_width());
  os.write(reinterpret_cast<const char*>(values.data()),
           static_cast<std::streamsize>(values.size() * sizeof(double)));
}

void write_binary(const std::filesystem::path& path, const DensityField& field) {
  const auto v = field.values();
  write_binary_values(path, field.grid(), std::vector<double>(v.begin(), v.end()));
}

DensityField read_binary(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + path.string());
  const auto n = get<std::int64_t>(is);
  const auto cells = get<std::int64_t>(is);
  const auto L = get<double>(is);
  CartesianGrid grid(static_cast<int>(n), L, static_cast<int>(cells));
  std::vector<double> vals(grid.size());
  if (!is.read(reinterpret_cast<char*>(vals.data()),
               static_cast<std::streamsize>(vals.size() * sizeof(double)))) {
    throw ConfigError("read_binary: truncated value block in " + path.string());
  }
  return DensityField(grid, std::move(vals));
}

void write_csv(std::ostream& os, const DensityField& field) {
  const auto& g = field.grid();
  os << (g.dim() == 1 ? "x,u\n" : "x,y,u\n");
  for (std::size_t i = 0; i < field.size(); ++i) {
    const Point x = g.center(i);
    os << format_double(x[0]) << ',';
    if (g.dim() == 2) os << format_double(x[1]) << ',';
    os << format_double(field[i]) << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const DensityField& field) {
  auto os = open_out(path, std::ios::trunc);
  write_csv(os, field);
}

void write_csv(std::ostream& os, const VectorField& field) {
  const auto& g = field.grid;
  os << (g.dim() == 1 ? "x,vx\n" : "x,y,vx,vy\n");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.center(i);
    os << format_double(x[0]) << ',';
    if (g.dim() == 2) os << format_double(x[1]) << ',';
    os << format_double(field.components[0][i]);
    if (g.dim() == 2) os << ',' << format_double(field.components[1][i]);
    os << '\n';
  }
}

}  // namespace mfield
