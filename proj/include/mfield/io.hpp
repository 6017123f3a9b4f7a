#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mfield/grid.hpp"

namespace mfield {

// Flat binary layout, all little-endian:
//   int64 n, int64 N, float64 L, then N^n float64 values in row-major order.
void write_binary(const std::filesystem::path& path, const DensityField& field);
DensityField read_binary(const std::filesystem::path& path);

/// Raw variant used for signed data such as velocity components.
void write_binary_values(const std::filesystem::path& path, const CartesianGrid& grid,
                         const std::vector<double>& values);

// CSV with a header row: "x,u" for n = 1, "x,y,u" for n = 2.
void write_csv(std::ostream& os, const DensityField& field);
void write_csv(const std::filesystem::path& path, const DensityField& field);

// Velocity CSV: "x,vx" or "x,y,vx,vy".
void write_csv(std::ostream& os, const VectorField& field);

/// Shortest round-trip decimal representation, as used by every CSV writer.
std::string format_double(double v);

}  // namespace mfield
