#include "blockpu/geometry.hpp"

#include "blockpu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace blockpu {

PointSet::PointSet(int dim) : dim_(dim)
{
    if (dim < 1 || dim > kMaxDim) {
        throw InvalidArgument("dimension must be 1.." + std::to_string(kMaxDim) + ", got " +
                              std::to_string(dim));
    }
}

PointSet::PointSet(int dim, std::vector<double> coords, std::vector<double> values)
    : PointSet(dim)
{
    if (coords.size() % static_cast<std::size_t>(dim) != 0) {
        throw InvalidArgument("coordinate count is not a multiple of the dimension");
    }
    coords_ = std::move(coords);
    set_values(std::move(values));
}

void PointSet::reserve(std::size_t n)
{
    coords_.reserve(n * static_cast<std::size_t>(dim_));
}

void PointSet::push_back(std::span<const double> p)
{
    if (has_values()) {
        throw InvalidArgument("point set carries values; push_back needs a value");
    }
    if (p.size() < static_cast<std::size_t>(dim_)) throw InvalidArgument("point has too few coordinates");
    coords_.insert(coords_.end(), p.begin(), p.begin() + dim_);
}

void PointSet::push_back(std::span<const double> p, double value)
{
    if (!empty() && !has_values()) {
        throw InvalidArgument("point set carries no values");
    }
    if (p.size() < static_cast<std::size_t>(dim_)) throw InvalidArgument("point has too few coordinates");
    coords_.insert(coords_.end(), p.begin(), p.begin() + dim_);
    values_.push_back(value);
}

void PointSet::set_values(std::vector<double> values)
{
    if (!values.empty() && values.size() != size()) {
        throw LengthMismatch("values (" + std::to_string(values.size()) + ") vs points (" +
                             std::to_string(size()) + ")");
    }
    values_ = std::move(values);
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const
{
    PointSet out(dim_);
    out.coords_.reserve(indices.size() * static_cast<std::size_t>(dim_));
    for (std::size_t i : indices) {
        const auto p = (*this)[i];
        out.coords_.insert(out.coords_.end(), p.begin(), p.end());
        if (has_values()) out.values_.push_back(values_[i]);
    }
    return out;
}

double ConvexDomain::tolerance() const noexcept
{
    return 1e-12 * std::max(box.edge, std::numeric_limits<double>::min());
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept
{
    const std::size_t dim = std::min(a.size(), b.size());
    double s = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
        const double d = a[m] - b[m];
        s += d * d;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) noexcept
{
    return std::sqrt(squared_distance(a, b));
}

AxisBox bounding_rect(const PointSet& pts)
{
    if (pts.empty()) throw InvalidArgument("bounding_rect of an empty point set");
    AxisBox r;
    r.dim = pts.dim();
    for (int m = 0; m < r.dim; ++m) {
        r.lo[m] = std::numeric_limits<double>::infinity();
        r.hi[m] = -std::numeric_limits<double>::infinity();
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (int m = 0; m < r.dim; ++m) {
            r.lo[m] = std::min(r.lo[m], pts.coord(i, m));
            r.hi[m] = std::max(r.hi[m], pts.coord(i, m));
        }
    }
    return r;
}

BoundingCube bounding_cube(const AxisBox& rect)
{
    BoundingCube c;
    c.dim = rect.dim;
    double lo = rect.lo[0];
    double hi = rect.hi[0];
    for (int m = 1; m < rect.dim; ++m) {
        lo = std::min(lo, rect.lo[m]);
        hi = std::max(hi, rect.hi[m]);
    }
    for (int m = 0; m < rect.dim; ++m) c.origin[m] = lo;
    c.edge = hi - lo;
    return c;
}

bool contains(const ConvexDomain& dom, std::span<const double> p) noexcept
{
    const double tol = dom.tolerance();
    for (const Facet& f : dom.facets) {
        double s = 0.0;
        for (int m = 0; m < dom.dim; ++m) s += f.normal[m] * p[m];
        if (s - f.offset > tol) return false;
    }
    return true;
}

double radical_inverse(std::size_t index, unsigned base) noexcept
{
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

PointSet halton(std::size_t n, int dim, std::size_t skip)
{
    static constexpr unsigned kBases[kMaxDim] = {2, 3, 5};
    PointSet out(dim);
    out.reserve(n);
    Coords p{};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t index = skip + i + 1;
        for (int m = 0; m < dim; ++m) p[m] = radical_inverse(index, kBases[m]);
        out.push_back(std::span<const double>(p.data(), static_cast<std::size_t>(dim)));
    }
    return out;
}

std::size_t grid_nodes_per_axis(std::size_t count_total, int dim)
{
    if (count_total < 1) throw InvalidArgument("grid count must be >= 1");
    const double n = std::round(std::pow(static_cast<double>(count_total), 1.0 / dim));
    return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

PointSet grid_on_rect(const AxisBox& rect, std::size_t count_total)
{
    const int dim = rect.dim;
    const std::size_t n = grid_nodes_per_axis(count_total, dim);
    std::size_t total = 1;
    for (int m = 0; m < dim; ++m) total *= n;

    auto node = [&](int axis, std::size_t k) {
        if (n == 1) return 0.5 * (rect.lo[axis] + rect.hi[axis]);
        if (k + 1 == n) return rect.hi[axis];
        return rect.lo[axis] + rect.extent(axis) * static_cast<double>(k) / static_cast<double>(n - 1);
    };

    PointSet out(dim);
    out.reserve(total);
    Coords p{};
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int m = dim - 1; m >= 0; --m) {
            p[m] = node(m, rem % n);
            rem /= n;
        }
        out.push_back(std::span<const double>(p.data(), static_cast<std::size_t>(dim)));
    }
    return out;
}

std::vector<std::size_t> indices_in_domain(const PointSet& pts, const ConvexDomain& dom)
{
    if (pts.dim() != dom.dim) throw InvalidArgument("dimension mismatch in reduce_to_domain");
    std::vector<std::size_t> keep;
    keep.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (contains(dom, pts[i])) keep.push_back(i);
    }
    return keep;
}

PointSet reduce_to_domain(const PointSet& pts, const ConvexDomain& dom)
{
    const auto keep = indices_in_domain(pts, dom);
    if (keep.empty()) throw EmptyReduction("no point lies inside the domain");
    return pts.subset(keep);
}

double fill_distance(const PointSet& nodes, const PointSet& probes)
{
    if (nodes.empty() || probes.empty()) throw InvalidArgument("fill_distance needs nonempty sets");
    if (nodes.dim() != probes.dim()) throw InvalidArgument("dimension mismatch in fill_distance");
    const auto n_probes = static_cast<std::ptrdiff_t>(probes.size());
    double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (std::ptrdiff_t i = 0; i < n_probes; ++i) {
        const auto p = probes[static_cast<std::size_t>(i)];
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            best = std::min(best, squared_distance(p, nodes[j]));
        }
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}

} // namespace blockpu
