#pragma once

#include "blockpu/geometry.hpp"
#include "blockpu/pum.hpp"

#include <cstddef>

namespace blockpu {

/// Three-species competition model
///   x' = p (1 - x/u) x - a x y - b x z
///   y' = q (1 - y/v) y - c x y - e y z
///   z' = r (1 - z/w) z - f x z - g y z
/// on the cube [0, gamma]^3. Defaults make E2 = (0, v, 0) and E3 = (0, 0, w) both stable.
struct CompetitionParams {
    double p = 1.0, q = 0.5, r = 2.0;
    double a = 1.0, b = 2.0, c = 0.3, e = 1.0, f = 3.0, g = 2.0;
    double u = 1.0, v = 2.0, w = 1.0;
    double gamma = 2.0;

    void validate() const;
};

Coords rhs(const Coords& state, const CompetitionParams& params) noexcept;

enum class Basin { E2, E3, Unresolved };

const char* basin_name(Basin b) noexcept;

struct IntegratorOptions {
    double step = 1e-2;   // fixed RK4 step
    double t_max = 500.0;
    double tol = 1e-3;    // distance to an equilibrium that counts as converged
};

/// Integrates from `initial` until within tol of E2 or E3, or until t_max.
Basin classify(const Coords& initial, const CompetitionParams& params, const IntegratorOptions& opts = {});

struct BisectionResult {
    Coords point{};   // midpoint of the final bracket
    Coords side_a{};  // bracket end in the basin of the first endpoint
    Coords side_b{};  // bracket end in the basin of the second endpoint
    Basin basin_a = Basin::Unresolved;
    Basin basin_b = Basin::Unresolved;
    std::size_t steps = 0;
};

/// Bisects the segment [a, b] until the bracket is no longer than `tol`. The endpoints must
/// converge to different equilibria (SameBasin otherwise). A midpoint whose trajectory
/// resolves to neither equilibrium is taken as the separatrix point.
BisectionResult bisect_separatrix(const Coords& a, const Coords& b, const CompetitionParams& params,
                                  double tol, const IntegratorOptions& opts = {});

struct SampleOptions {
    std::size_t lattice = 10;  // nodes per axis of the initial-condition lattice
    double tol = 1e-3;
    IntegratorOptions integrator{};
    Execution execution = Execution::parallel;
    int threads = 0;
};

/// Separatrix points from axis-adjacent lattice pairs that end in different basins,
/// at most `n_pairs` of them (lattice order). Lattice nodes sit at cell centres of [0, gamma]^3.
PointSet sample_separatrix(const CompetitionParams& params, std::size_t n_pairs, const SampleOptions& opts = {});

/// Treats the separatrix as a graph over two coordinates: sites are the remaining two
/// coordinates, values are coordinate `height_axis`.
PointSet separatrix_height_field(const PointSet& separatrix, int height_axis);

} // namespace blockpu
