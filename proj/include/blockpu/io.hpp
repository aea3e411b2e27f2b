#pragma once

#include "blockpu/geometry.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>

namespace blockpu {

/// Reads a point file: one point per line, whitespace- or comma-separated columns
/// x1..xM with an optional trailing value column. `#` lines and blank lines are skipped.
/// Every row must have the same column count (M or M+1).
PointSet read_points(std::istream& in, int dim);
PointSet read_points(const std::filesystem::path& path, int dim);

/// Writes points (and values, if present) with 17 significant digits.
void write_points(std::ostream& out, const PointSet& pts);
void write_points(const std::filesystem::path& path, const PointSet& pts);

/// Writes `x1 .. xM value` rows under a `#` header line.
void write_values(const std::filesystem::path& path, const PointSet& pts, std::span<const double> values);

} // namespace blockpu
