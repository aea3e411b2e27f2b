#include "blockpu/blockpart.hpp"

#include "blockpu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>

namespace blockpu {

std::size_t blocks_per_side(double edge, double radius, BlockMode mode)
{
    if (!(radius > 0.0) || !(edge >= 0.0)) throw InvalidArgument("blocks_per_side needs radius > 0");
    const double ratio = edge / radius;
    if (mode == BlockMode::paper) return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio)));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(ratio)));
}

std::size_t strip_index(double coord, double axis_min, double width, std::size_t q) noexcept
{
    const double t = std::floor((coord - axis_min) / width);
    if (!(t >= 0.0)) return 1;
    if (t >= static_cast<double>(q - 1)) return q;
    return static_cast<std::size_t>(t) + 1;
}

std::size_t block_index(std::span<const std::size_t> strips, std::size_t q) noexcept
{
    std::size_t k = 0;
    for (std::size_t m = 0; m + 1 < strips.size(); ++m) k = (k + (strips[m] - 1)) * q;
    return k + strips.back();
}

BlockStructure::BlockStructure(const PointSet& pts, const BoundingCube& box, std::size_t q,
                               BlockMode mode, double tolerance)
    : source_(&pts), dim_(pts.dim()), box_(box), q_(q), mode_(mode)
{
    if (q_ < 1) throw InvalidArgument("q must be >= 1");
    if (box.dim != dim_) throw InvalidArgument("box and point dimensions differ");
    if (!(box.edge > 0.0)) throw InvalidArgument("bounding cube has zero edge");
    width_ = box.edge / static_cast<double>(q_);
    if (tolerance < 0.0) tolerance = 1e-12 * box.edge;

    std::size_t blocks = 1;
    for (int m = 0; m < dim_; ++m) blocks *= q_;

    if (blocks > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("too many blocks");

    // Counting sort on block numbers; a stable pass keeps buckets in ascending index order.
    const std::size_t n = pts.size();
    const auto block_of = std::make_unique_for_overwrite<std::uint32_t[]>(n);
    offsets_.assign(blocks + 1, 0);
    std::array<std::size_t, kMaxDim> strips{};
    for (std::size_t i = 0; i < n; ++i) {
        for (int m = 0; m < dim_; ++m) {
            const double c = pts.coord(i, m);
            if (c < box.origin[m] - tolerance || c > box.origin[m] + box.edge + tolerance ||
                !std::isfinite(c)) {
                throw PointOutsideBox("point " + std::to_string(i) + " lies outside the bounding cube");
            }
            strips[m] = strip(c, m);
        }
        const std::size_t k = block_index(std::span<const std::size_t>(strips.data(), static_cast<std::size_t>(dim_)), q_);
        block_of[i] = static_cast<std::uint32_t>(k - 1);
        ++offsets_[k];
    }
    for (std::size_t k = 1; k <= blocks; ++k) offsets_[k] += offsets_[k - 1];
    indices_.resize(n);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) indices_[cursor[block_of[i]]++] = i;
}

std::size_t BlockStructure::strip(double coord, int axis) const noexcept
{
    return strip_index(coord, box_.origin[axis], width_, q_);
}

std::span<const std::size_t> BlockStructure::bucket(std::size_t k) const noexcept
{
    return {indices_.data() + offsets_[k - 1], offsets_[k] - offsets_[k - 1]};
}

std::size_t BlockStructure::clamped_block(std::span<const double> p) const noexcept
{
    std::array<std::size_t, kMaxDim> strips{};
    for (int m = 0; m < dim_; ++m) strips[m] = strip(p[m], m);
    return block_index(std::span<const std::size_t>(strips.data(), static_cast<std::size_t>(dim_)), q_);
}

std::size_t BlockStructure::containing_query(std::span<const double> p) const
{
    const double tol = 1e-12 * box_.edge;
    for (int m = 0; m < dim_; ++m) {
        if (!(p[m] >= box_.origin[m] - tol && p[m] <= box_.origin[m] + box_.edge + tol)) {
            throw PointOutsideBox("query point lies outside the bounding cube");
        }
    }
    return clamped_block(p);
}

Neighborhood BlockStructure::neighborhood_of(std::size_t k) const
{
    if (k < 1 || k > block_count()) throw InvalidArgument("block index out of range");
    std::array<std::size_t, kMaxDim> strips{};
    std::size_t rem = k - 1;
    for (int m = dim_ - 1; m >= 0; --m) {
        strips[m] = rem % q_ + 1;
        rem /= q_;
    }

    Neighborhood nb;
    nb.center_block = k;
    std::array<std::size_t, kMaxDim> lo{};
    std::array<std::size_t, kMaxDim> hi{};
    for (int m = 0; m < dim_; ++m) {
        lo[m] = strips[m] > 1 ? strips[m] - 1 : 1;
        hi[m] = strips[m] < q_ ? strips[m] + 1 : q_;
    }
    std::array<std::size_t, kMaxDim> cur = lo;
    // Odometer over the (clipped) 3^M box of strips; last axis fastest gives ascending ids.
    while (true) {
        nb.block_ids.push_back(block_index(std::span<const std::size_t>(cur.data(), static_cast<std::size_t>(dim_)), q_));
        int m = dim_ - 1;
        while (m >= 0 && cur[m] == hi[m]) {
            cur[m] = lo[m];
            --m;
        }
        if (m < 0) break;
        ++cur[m];
    }
    return nb;
}

std::vector<Neighbor> BlockStructure::range_search(std::span<const double> center, double radius,
                                                   SearchStats* stats) const
{
    std::vector<Neighbor> out;
    range_search(center, radius, out, stats);
    return out;
}

void BlockStructure::range_search(std::span<const double> center, double radius,
                                  std::vector<Neighbor>& out, SearchStats* stats) const
{
    out.clear();
    if (mode_ == BlockMode::cover && q_ > 1 && radius > width_ * (1.0 + 1e-12)) {
        throw SupportExceedsNeighborhood("radius " + std::to_string(radius) + " exceeds block width " +
                                         std::to_string(width_));
    }
    std::array<std::size_t, kMaxDim> lo{};
    std::array<std::size_t, kMaxDim> hi{};
    for (int m = 0; m < dim_; ++m) {
        const std::size_t s = strip(center[m], m);
        lo[m] = s > 1 ? s - 1 : 1;
        hi[m] = s < q_ ? s + 1 : q_;
    }

    std::size_t candidates = 0;
    std::size_t blocks = 0;
    std::array<std::size_t, kMaxDim> cur = lo;
    while (true) {
        const std::size_t k = block_index(std::span<const std::size_t>(cur.data(), static_cast<std::size_t>(dim_)), q_);
        ++blocks;
        for (std::size_t i : bucket(k)) {
            ++candidates;
            const double d = distance(center, (*source_)[i]);
            if (d <= radius) out.push_back({i, d});
        }
        int m = dim_ - 1;
        while (m >= 0 && cur[m] == hi[m]) {
            cur[m] = lo[m];
            --m;
        }
        if (m < 0) break;
        ++cur[m];
    }
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
    });
    if (stats != nullptr) {
        stats->candidates = candidates;
        stats->blocks = blocks;
    }
}

} // namespace blockpu
