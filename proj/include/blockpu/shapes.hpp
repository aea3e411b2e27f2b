#pragma once

#include "blockpu/geometry.hpp"

#include <cstddef>
#include <string_view>

namespace blockpu {

/// Built-in convex domains used by the generators.
///   pentagon: regular, vertices at 90 + 72k degrees on the circle r = 0.5 about (0.5, 0.5)
///   triangle: (0,0), (1,0), (0.5,1)
///   square:   [0,1]^2
///   cylinder: hull of a 64 x 16 sampling of the lateral surface r = 0.4 about the z-axis
///             through (0.5, 0.5), z in [0.05, 0.95]
///   pyramid:  base [0.1,0.9]^2 at z = 0.1, apex (0.5, 0.5, 0.9)
///   cube:     [0,1]^3
enum class Shape { pentagon, triangle, square, cylinder, pyramid, cube };

Shape shape_from_name(std::string_view name);
std::string_view shape_name(Shape s) noexcept;
int shape_dim(Shape s) noexcept;

/// Vertex set whose convex hull is the shape.
PointSet shape_vertices(Shape s);
ConvexDomain shape_domain(Shape s);

/// First n Halton points of the unit square/cube, reduced to the shape.
PointSet halton_in_shape(Shape s, std::size_t n);

} // namespace blockpu
