#include "blockpu/kernels.hpp"

#include "blockpu/errors.hpp"

#include <algorithm>
#include <cmath>

namespace blockpu {

double phi_wendland_c2(double r, double epsilon) noexcept
{
    const double t = epsilon * r;
    if (t >= 1.0) return 0.0;
    const double u = 1.0 - t;
    const double u2 = u * u;
    return u2 * u2 * (4.0 * t + 1.0);
}

double phi_wu_c4(double r, double epsilon) noexcept
{
    const double t = epsilon * r;
    if (t >= 1.0) return 0.0;
    const double u = 1.0 - t;
    const double u3 = u * u * u;
    const double poly = ((((5.0 * t + 30.0) * t + 72.0) * t + 82.0) * t + 36.0) * t + 6.0;
    return u3 * u3 * poly;
}

Kernel::Kernel(KernelId id, double epsilon) : id_(id), epsilon_(epsilon)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidArgument("shape parameter must be positive and finite");
    }
}

Kernel Kernel::from_name(std::string_view name, double epsilon)
{
    std::string n(name);
    std::replace(n.begin(), n.end(), '_', '-');
    if (n == "wendland-c2") return {KernelId::wendland_c2, epsilon};
    if (n == "wu-c4") return {KernelId::wu_c4, epsilon};
    throw InvalidArgument("unknown kernel '" + std::string(name) + "'");
}

std::string Kernel::name() const
{
    switch (id_) {
    case KernelId::wendland_c2: return "wendland-c2";
    case KernelId::wu_c4: return "wu-c4";
    }
    return "unknown";
}

double Kernel::operator()(double r) const noexcept
{
    switch (id_) {
    case KernelId::wendland_c2: return phi_wendland_c2(r, epsilon_);
    case KernelId::wu_c4: return phi_wu_c4(r, epsilon_);
    }
    return 0.0;
}

Eigen::MatrixXd dense_distance_matrix(const PointSet& a, const PointSet& b, const Kernel& kernel)
{
    if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch in distance matrix");
    Eigen::MatrixXd out(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kernel(distance(a[i], b[j]));
        }
    }
    return out;
}

Eigen::MatrixXd SparseMatrix::to_dense() const
{
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (const Triplet& t : entries) {
        out(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
    }
    return out;
}

SparseMatrix sparse_distance_matrix(const PointSet& a, const BlockStructure& b, const Kernel& kernel)
{
    if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch in distance matrix");
    SparseMatrix out;
    out.rows = a.size();
    out.cols = b.source().size();
    const double support = kernel.support();
    std::vector<Neighbor> found;
    std::vector<Triplet> row;
    for (std::size_t i = 0; i < a.size(); ++i) {
        b.range_search(a[i], support, found);
        row.clear();
        for (const Neighbor& nb : found) {
            if (nb.distance < support) row.push_back({i, nb.index, kernel(nb.distance)});
        }
        std::sort(row.begin(), row.end(), [](const Triplet& x, const Triplet& y) { return x.col < y.col; });
        out.entries.insert(out.entries.end(), row.begin(), row.end());
    }
    return out;
}

} // namespace blockpu
