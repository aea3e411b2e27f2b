#include "blockpu/separatrix.hpp"

#include "blockpu/errors.hpp"
#include "parallel.hpp"

#include <cmath>
#include <array>
#include <limits>
#include <string>

namespace blockpu {
namespace {

Coords axpy(const Coords& x, double h, const Coords& k) noexcept
{
    return {x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2]};
}

double dist3(const Coords& x, const Coords& y) noexcept
{
    return std::sqrt((x[0] - y[0]) * (x[0] - y[0]) + (x[1] - y[1]) * (x[1] - y[1]) + (x[2] - y[2]) * (x[2] - y[2]));
}

Coords midpoint(const Coords& x, const Coords& y) noexcept
{
    return {0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1]), 0.5 * (x[2] + y[2])};
}

} // namespace

void CompetitionParams::validate() const
{
    for (double x : {p, q, r, a, b, c, e, f, g}) {
        if (!(x >= 0.0)) throw InvalidArgument("model rates must be nonnegative");
    }
    if (!(u > 0.0 && v > 0.0 && w > 0.0)) throw InvalidArgument("carrying capacities must be positive");
    if (!(gamma > 0.0)) throw InvalidArgument("cube edge gamma must be positive");
}

Coords rhs(const Coords& s, const CompetitionParams& k) noexcept
{
    const double x = s[0];
    const double y = s[1];
    const double z = s[2];
    return {k.p * (1.0 - x / k.u) * x - k.a * x * y - k.b * x * z,
            k.q * (1.0 - y / k.v) * y - k.c * x * y - k.e * y * z,
            k.r * (1.0 - z / k.w) * z - k.f * x * z - k.g * y * z};
}

const char* basin_name(Basin b) noexcept
{
    switch (b) {
    case Basin::E2: return "E2";
    case Basin::E3: return "E3";
    case Basin::Unresolved: return "unresolved";
    }
    return "?";
}

Basin classify(const Coords& initial, const CompetitionParams& params, const IntegratorOptions& opts)
{
    const Coords e2{0.0, params.v, 0.0};
    const Coords e3{0.0, 0.0, params.w};
    Coords x = initial;
    const double h = opts.step;
    const auto steps = static_cast<std::size_t>(std::ceil(opts.t_max / h));
    for (std::size_t n = 0; n <= steps; ++n) {
        if (dist3(x, e2) < opts.tol) return Basin::E2;
        if (dist3(x, e3) < opts.tol) return Basin::E3;
        if (n == steps) break;
        const Coords k1 = rhs(x, params);
        const Coords k2 = rhs(axpy(x, 0.5 * h, k1), params);
        const Coords k3 = rhs(axpy(x, 0.5 * h, k2), params);
        const Coords k4 = rhs(axpy(x, h, k3), params);
        for (int m = 0; m < 3; ++m) x[m] += h / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
        if (!std::isfinite(x[0] + x[1] + x[2])) return Basin::Unresolved;
    }
    return Basin::Unresolved;
}

BisectionResult bisect_separatrix(const Coords& a, const Coords& b, const CompetitionParams& params,
                                  double tol, const IntegratorOptions& opts)
{
    if (!(tol > 0.0)) throw InvalidArgument("bisection tolerance must be positive");
    BisectionResult res;
    res.basin_a = classify(a, params, opts);
    res.basin_b = classify(b, params, opts);
    if (res.basin_a == Basin::Unresolved || res.basin_b == Basin::Unresolved) {
        throw InvalidArgument("bisection endpoints must converge to an equilibrium");
    }
    if (res.basin_a == res.basin_b) {
        throw SameBasin(std::string("both endpoints converge to ") + basin_name(res.basin_a));
    }
    res.side_a = a;
    res.side_b = b;
    while (dist3(res.side_a, res.side_b) > tol) {
        const Coords mid = midpoint(res.side_a, res.side_b);
        ++res.steps;
        const Basin m = classify(mid, params, opts);
        if (m == res.basin_a) {
            res.side_a = mid;
        } else if (m == res.basin_b) {
            res.side_b = mid;
        } else {
            // Trajectory stalls near the saddle: the midpoint sits on the separatrix.
            res.side_a = mid;
            res.side_b = mid;
            break;
        }
    }
    res.point = midpoint(res.side_a, res.side_b);
    return res;
}

PointSet sample_separatrix(const CompetitionParams& params, std::size_t n_pairs, const SampleOptions& opts)
{
    params.validate();
    if (n_pairs < 1) throw InvalidArgument("n_pairs must be >= 1");
    const std::size_t n = opts.lattice;
    if (n < 2) throw InvalidArgument("lattice needs at least 2 nodes per axis");
    const int workers = detail::worker_count(opts.execution == Execution::parallel, opts.threads);

    auto node = [&](std::size_t i, std::size_t j, std::size_t k) {
        const double h = params.gamma / static_cast<double>(n);
        return Coords{(static_cast<double>(i) + 0.5) * h, (static_cast<double>(j) + 0.5) * h,
                      (static_cast<double>(k) + 0.5) * h};
    };
    auto flat = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };

    std::vector<Basin> label(n * n * n);
    detail::for_each_index(0, label.size(), workers, [&](std::size_t idx) {
        label[idx] = classify(node(idx / (n * n), (idx / n) % n, idx % n), params, opts.integrator);
    });

    struct Pair {
        Coords a;
        Coords b;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < n && pairs.size() < n_pairs; ++i) {
        for (std::size_t j = 0; j < n && pairs.size() < n_pairs; ++j) {
            for (std::size_t k = 0; k < n && pairs.size() < n_pairs; ++k) {
                const Basin here = label[flat(i, j, k)];
                if (here == Basin::Unresolved) continue;
                const std::array<std::array<std::size_t, 3>, 3> next{{{i + 1, j, k}, {i, j + 1, k}, {i, j, k + 1}}};
                for (const auto& nb : next) {
                    if (nb[0] >= n || nb[1] >= n || nb[2] >= n) continue;
                    const Basin there = label[flat(nb[0], nb[1], nb[2])];
                    if (there == Basin::Unresolved || there == here) continue;
                    pairs.push_back({node(i, j, k), node(nb[0], nb[1], nb[2])});
                    if (pairs.size() == n_pairs) break;
                }
            }
        }
    }

    std::vector<Coords> found(pairs.size());
    detail::for_each_index(0, pairs.size(), workers, [&](std::size_t t) {
        found[t] = bisect_separatrix(pairs[t].a, pairs[t].b, params, opts.tol, opts.integrator).point;
    });
    PointSet out(3);
    out.reserve(found.size());
    for (const Coords& p : found) out.push_back(p);
    return out;
}

PointSet separatrix_height_field(const PointSet& separatrix, int height_axis)
{
    if (separatrix.dim() != 3 || height_axis < 0 || height_axis > 2) {
        throw InvalidArgument("height field needs 3D points and an axis in 0..2");
    }
    PointSet out(2);
    out.reserve(separatrix.size());
    for (std::size_t i = 0; i < separatrix.size(); ++i) {
        Coords site{};
        int m = 0;
        for (int axis = 0; axis < 3; ++axis) {
            if (axis != height_axis) site[m++] = separatrix.coord(i, axis);
        }
        out.push_back(std::span<const double>(site.data(), 2), separatrix.coord(i, height_axis));
    }
    return out;
}

} // namespace blockpu
