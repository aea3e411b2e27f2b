#pragma once

#include "blockpu/geometry.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace blockpu {

/// How the number of blocks per side is derived from the search radius.
///
/// `paper`: q = ceil(L / radius). Block width may fall slightly below the radius, so the
///          3^M neighbourhood is not guaranteed to contain every point of the ball.
/// `cover`: q = max(1, floor(L / radius)). Width >= radius, so the neighbourhood always
///          contains the whole ball and range searches are exact.
enum class BlockMode { cover, paper };

std::size_t blocks_per_side(double edge, double radius, BlockMode mode);

/// 1-based strip containing `coord`; coordinates beyond either end clamp to 1 or q.
std::size_t strip_index(double coord, double axis_min, double width, std::size_t q) noexcept;

/// 1-based block number from 1-based strip indices (last axis varies fastest).
std::size_t block_index(std::span<const std::size_t> strips, std::size_t q) noexcept;

struct Neighbor {
    std::size_t index;  // 0-based point index in the source set
    double distance;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct Neighborhood {
    std::size_t center_block = 0;
    std::vector<std::size_t> block_ids;  // 1-based, ascending
};

/// Per-query instrumentation.
struct SearchStats {
    std::size_t candidates = 0;  // points whose distance was computed
    std::size_t blocks = 0;      // blocks scanned
};

/// Points of one set bucketed into the q^M blocks of a bounding cube.
///
/// Immutable after construction. Queries are safe to run concurrently.
class BlockStructure {
public:
    /// Buckets every point of `pts` by its block. Points may sit outside `box` by at most
    /// `tolerance`; farther ones raise PointOutsideBox. `pts` must outlive the structure.
    BlockStructure(const PointSet& pts, const BoundingCube& box, std::size_t q,
                   BlockMode mode = BlockMode::cover, double tolerance = -1.0);

    int dim() const noexcept { return dim_; }
    std::size_t q() const noexcept { return q_; }
    std::size_t block_count() const noexcept { return offsets_.size() - 1; }
    double width() const noexcept { return width_; }
    BlockMode mode() const noexcept { return mode_; }
    const BoundingCube& box() const noexcept { return box_; }
    const PointSet& source() const noexcept { return *source_; }

    /// Sorted point indices stored in block k (1-based).
    std::span<const std::size_t> bucket(std::size_t k) const noexcept;

    /// Block containing p. Throws PointOutsideBox if p is outside the cube.
    std::size_t containing_query(std::span<const double> p) const;

    /// Block of p with coordinates clamped into the cube.
    std::size_t clamped_block(std::span<const double> p) const noexcept;

    Neighborhood neighborhood_of(std::size_t k) const;

    /// Stored points within `radius` (inclusive) of `center`, ordered by distance then index.
    ///
    /// In cover mode a radius wider than the block width (with q > 1) raises
    /// SupportExceedsNeighborhood. Centers outside the cube are accepted: clamping their
    /// strip indices only enlarges the scanned region.
    std::vector<Neighbor> range_search(std::span<const double> center, double radius,
                                       SearchStats* stats = nullptr) const;

    /// Same as range_search, appending into `out` (cleared first) to reuse storage.
    void range_search(std::span<const double> center, double radius, std::vector<Neighbor>& out,
                      SearchStats* stats = nullptr) const;

private:
    std::size_t strip(double coord, int axis) const noexcept;

    const PointSet* source_;
    int dim_;
    BoundingCube box_;
    std::size_t q_;
    double width_;
    BlockMode mode_;
    std::vector<std::size_t> offsets_;  // size q^M + 1
    std::vector<std::size_t> indices_;  // flat bucket contents
};

} // namespace blockpu
