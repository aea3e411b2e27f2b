#pragma once

#include "blockpu/blockpart.hpp"
#include "blockpu/geometry.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace blockpu {

/// Wendland C2: (1 - eps r)^4_+ (4 eps r + 1).
double phi_wendland_c2(double r, double epsilon) noexcept;

/// Wu C4: (1 - eps r)^6_+ (5 (eps r)^5 + 30 (eps r)^4 + 72 (eps r)^3 + 82 (eps r)^2 + 36 eps r + 6).
double phi_wu_c4(double r, double epsilon) noexcept;

enum class KernelId { wendland_c2, wu_c4 };

/// Compactly supported radial kernel with shape parameter epsilon; support radius 1/epsilon.
class Kernel {
public:
    Kernel(KernelId id, double epsilon);

    /// Accepts "wendland-c2" / "wu-c4" (underscores also accepted).
    static Kernel from_name(std::string_view name, double epsilon);

    KernelId id() const noexcept { return id_; }
    double epsilon() const noexcept { return epsilon_; }
    double support() const noexcept { return 1.0 / epsilon_; }
    std::string name() const;

    double operator()(double r) const noexcept;

private:
    KernelId id_;
    double epsilon_;
};

/// |A| x |B| matrix of phi(|a_i - b_j|).
Eigen::MatrixXd dense_distance_matrix(const PointSet& a, const PointSet& b, const Kernel& kernel);

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Coordinate-format matrix; entries sorted by (row, col) without duplicates.
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Triplet> entries;

    Eigen::MatrixXd to_dense() const;
};

/// Kernel matrix between `a` (rows) and the points indexed by `b` (columns), storing only
/// pairs strictly inside the support. The neighbour lookup goes through `b`'s block
/// structure; in cover mode its block width must be at least the kernel support.
SparseMatrix sparse_distance_matrix(const PointSet& a, const BlockStructure& b, const Kernel& kernel);

} // namespace blockpu
