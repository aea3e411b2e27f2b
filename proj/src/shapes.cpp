#include "blockpu/shapes.hpp"

#include "blockpu/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace blockpu {

Shape shape_from_name(std::string_view name)
{
    for (Shape s : {Shape::pentagon, Shape::triangle, Shape::square, Shape::cylinder, Shape::pyramid, Shape::cube}) {
        if (shape_name(s) == name) return s;
    }
    throw InvalidArgument("unknown shape '" + std::string(name) + "'");
}

std::string_view shape_name(Shape s) noexcept
{
    switch (s) {
    case Shape::pentagon: return "pentagon";
    case Shape::triangle: return "triangle";
    case Shape::square: return "square";
    case Shape::cylinder: return "cylinder";
    case Shape::pyramid: return "pyramid";
    case Shape::cube: return "cube";
    }
    return "?";
}

int shape_dim(Shape s) noexcept
{
    switch (s) {
    case Shape::pentagon:
    case Shape::triangle:
    case Shape::square: return 2;
    default: return 3;
    }
}

PointSet shape_vertices(Shape s)
{
    constexpr double pi = std::numbers::pi;
    PointSet v(shape_dim(s));
    switch (s) {
    case Shape::pentagon:
        for (int k = 0; k < 5; ++k) {
            const double t = (90.0 + 72.0 * k) * pi / 180.0;
            v.push_back(Coords{0.5 + 0.5 * std::cos(t), 0.5 + 0.5 * std::sin(t), 0.0});
        }
        break;
    case Shape::triangle:
        v.push_back(Coords{0.0, 0.0, 0.0});
        v.push_back(Coords{1.0, 0.0, 0.0});
        v.push_back(Coords{0.5, 1.0, 0.0});
        break;
    case Shape::square:
        for (double y : {0.0, 1.0}) {
            for (double x : {0.0, 1.0}) v.push_back(Coords{x, y, 0.0});
        }
        break;
    case Shape::cylinder:
        for (int k = 0; k < 16; ++k) {
            const double z = 0.05 + 0.9 * k / 15.0;
            for (int a = 0; a < 64; ++a) {
                const double t = 2.0 * pi * a / 64.0;
                v.push_back(Coords{0.5 + 0.4 * std::cos(t), 0.5 + 0.4 * std::sin(t), z});
            }
        }
        break;
    case Shape::pyramid:
        for (double y : {0.1, 0.9}) {
            for (double x : {0.1, 0.9}) v.push_back(Coords{x, y, 0.1});
        }
        v.push_back(Coords{0.5, 0.5, 0.9});
        break;
    case Shape::cube:
        for (double z : {0.0, 1.0}) {
            for (double y : {0.0, 1.0}) {
                for (double x : {0.0, 1.0}) v.push_back(Coords{x, y, z});
            }
        }
        break;
    }
    return v;
}

ConvexDomain shape_domain(Shape s)
{
    return convex_hull(shape_vertices(s));
}

PointSet halton_in_shape(Shape s, std::size_t n)
{
    return reduce_to_domain(halton(n, shape_dim(s)), shape_domain(s));
}

} // namespace blockpu
