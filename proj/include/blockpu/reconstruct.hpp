#pragma once

#include "blockpu/geometry.hpp"
#include "blockpu/pum.hpp"
#include "blockpu/report.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace blockpu {

/// 3D point cloud with per-point normals and the off-surface step length.
struct OrientedCloud {
    PointSet points{3};
    std::vector<Coords> normals;
    double step = 0.0;
};

/// 1% of the bounding-cube edge of the cloud.
double default_step(const PointSet& points);

/// n points on the sphere of radius `radius` about `center` (Fibonacci lattice) with
/// exact outward unit normals.
OrientedCloud sphere_cloud(std::size_t n, double radius = 1.0, Coords center = {0.0, 0.0, 0.0},
                           double step = 0.0);

/// On-surface points (value 0) for every cloud point, then x + step*n (value +1) and
/// x - step*n (value -1) for every point whose normal is nonzero. Normals are
/// normalised first.
PointSet augment(const OrientedCloud& cloud);

/// Interpolant sampled on a regular grid; x varies fastest.
struct ValueGrid {
    std::array<std::size_t, 3> counts{};
    Coords lo{};
    Coords hi{};
    std::vector<double> values;  // NaN where the point is outside the covered domain

    Coords node(std::size_t ix, std::size_t iy, std::size_t iz) const noexcept;
};

/// Shape parameter 1/(2 delta) whose kernel support spans a whole subdomain, where delta is
/// the subdomain radius the covering of the augmented cloud will use under `cfg`.
double support_covering_epsilon(const OrientedCloud& cloud, const PumConfig& cfg);

/// Fits the implicit interpolant to the augmented cloud.
PumModel fit_implicit(const OrientedCloud& cloud, const PumConfig& cfg);

/// Samples a fitted model on a counts[0] x counts[1] x counts[2] grid over the domain's
/// bounding box R. Grid nodes outside the domain or outside every subdomain get NaN.
/// `pu_deviation`, if given, receives max |sum_j W_j - 1| over the evaluated nodes.
ValueGrid sample_grid(const PumModel& model, std::array<std::size_t, 3> counts, double* pu_deviation = nullptr);

struct ReconstructResult {
    ValueGrid grid;
    RunReport report;
};

ReconstructResult reconstruct(const OrientedCloud& cloud, const PumConfig& cfg,
                              std::array<std::size_t, 3> counts);

/// Rows `x y z nx ny nz`; `#` lines skipped. step is left at 0.
OrientedCloud read_oriented_cloud(std::istream& in);
OrientedCloud read_oriented_cloud(const std::filesystem::path& path);

/// ASCII PLY with vertex properties x, y, z, nx, ny, nz (other properties ignored).
OrientedCloud read_ply_cloud(const std::filesystem::path& path);

/// Header `nx ny nz xmin xmax ymin ymax zmin zmax`, then one value per line.
void write_grid(std::ostream& out, const ValueGrid& grid);
void write_grid(const std::filesystem::path& path, const ValueGrid& grid);
ValueGrid read_grid(std::istream& in);

} // namespace blockpu
