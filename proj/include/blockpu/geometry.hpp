#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace blockpu {

/// Largest supported spatial dimension.
inline constexpr int kMaxDim = 3;

using Coords = std::array<double, kMaxDim>;

/// Flat M-dimensional point collection with optional attached scalar values.
///
/// Coordinates are stored contiguously (point i occupies coords[i*dim .. i*dim+dim)).
/// `values` is either empty or parallel to the points.
class PointSet {
public:
    explicit PointSet(int dim = 2);
    PointSet(int dim, std::vector<double> coords, std::vector<double> values = {});

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_); }
    bool empty() const noexcept { return coords_.empty(); }
    bool has_values() const noexcept { return !values_.empty(); }

    std::span<const double> operator[](std::size_t i) const noexcept
    {
        return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    double coord(std::size_t i, int axis) const noexcept
    {
        return coords_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
    }

    void reserve(std::size_t n);
    void push_back(std::span<const double> p);
    void push_back(std::span<const double> p, double value);

    const std::vector<double>& coords() const noexcept { return coords_; }
    const std::vector<double>& values() const noexcept { return values_; }
    void set_values(std::vector<double> values);

    /// Copy of the points (and values, if any) at the given indices, in that order.
    PointSet subset(std::span<const std::size_t> indices) const;

private:
    int dim_;
    std::vector<double> coords_;
    std::vector<double> values_;
};

/// Axis-aligned box given by per-axis bounds.
struct AxisBox {
    int dim = 2;
    Coords lo{};
    Coords hi{};

    double extent(int axis) const noexcept { return hi[axis] - lo[axis]; }
};

/// Axis-aligned square/cube: `origin` plus a common edge length on every axis.
struct BoundingCube {
    int dim = 2;
    Coords origin{};
    double edge = 0.0;
};

/// Half-space {x : normal . x <= offset} with unit outward normal.
struct Facet {
    Coords normal{};
    double offset = 0.0;
};

struct ConvexDomain {
    int dim = 2;
    PointSet vertices{2};
    std::vector<Facet> facets;
    double measure = 0.0;  // area for M=2, volume for M=3
    AxisBox rect;          // tight bounding box of the vertices
    BoundingCube box;      // [min_m lo_m, max_m hi_m]^M

    /// Absolute membership tolerance (relative 1e-12 of the box edge).
    double tolerance() const noexcept;
};

/// Euclidean distance over the leading min(|a|, |b|) coordinates.
double distance(std::span<const double> a, std::span<const double> b) noexcept;
double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// Tight axis-aligned box around the points.
AxisBox bounding_rect(const PointSet& pts);
/// Cube spanning the smallest and largest coordinate over all axes.
BoundingCube bounding_cube(const AxisBox& rect);

/// Convex hull (monotone chain for M=2, quickhull for M=3).
/// Throws DegenerateInput when the points are affinely dependent.
ConvexDomain convex_hull(const PointSet& pts);

/// True iff p satisfies every facet inequality within the domain tolerance.
bool contains(const ConvexDomain& dom, std::span<const double> p) noexcept;

/// First n Halton points after skipping `skip`; index 1 is the first point.
/// Bases 2, 3 (and 5 for M=3).
PointSet halton(std::size_t n, int dim, std::size_t skip = 0);

/// Radical inverse of `index` in `base`.
double radical_inverse(std::size_t index, unsigned base) noexcept;

/// Tensor grid with round(count_total^(1/M)) nodes per axis, inclusive of both ends.
/// The last axis varies fastest.
PointSet grid_on_rect(const AxisBox& rect, std::size_t count_total);

/// Nodes-per-axis used by grid_on_rect.
std::size_t grid_nodes_per_axis(std::size_t count_total, int dim);

/// Indices of the points that lie inside the domain, in input order.
std::vector<std::size_t> indices_in_domain(const PointSet& pts, const ConvexDomain& dom);

/// Subsequence of pts inside dom. Throws EmptyReduction if nothing survives.
PointSet reduce_to_domain(const PointSet& pts, const ConvexDomain& dom);

/// max over probes of the distance to the nearest node.
double fill_distance(const PointSet& nodes, const PointSet& probes);

} // namespace blockpu
