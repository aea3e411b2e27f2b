#pragma once

#include "blockpu/blockpart.hpp"
#include "blockpu/geometry.hpp"
#include "blockpu/kernels.hpp"
#include "blockpu/report.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blockpu {

/// Serial reference loops or OpenMP-parallel loops. Both produce bit-identical results.
enum class Execution { serial, parallel };

struct PumConfig {
    Kernel kernel{KernelId::wendland_c2, 0.5};
    std::size_t d_R = 0;  // subdomain grid count on R; 0 picks suggest_d_R
    std::size_t s_R = 0;  // evaluation grid count on R (used by pum_interpolate)
    BlockMode block_mode = BlockMode::cover;
    std::optional<double> delta_override;
    Execution execution = Execution::parallel;
    int threads = 0;  // 0: OpenMP default
};

/// floor(L/2 * (N / measure)^(1/M))^M, clamped below by 1.
std::size_t suggest_d_R(std::size_t n, double measure, double edge, int dim);

/// L * sqrt(2) / d_R^(1/M).
double subdomain_radius(double edge, std::size_t d_R, int dim);

/// Subdomain centres, common radius and per-subdomain memberships.
struct Covering {
    PointSet centers{2};
    double radius = 0.0;
    std::size_t d_R = 0;
    std::size_t q = 0;        // blocks per side of the global structures
    std::size_t pruned = 0;   // centres dropped because their subdomain held no data site
    std::vector<std::vector<std::size_t>> nodes;  // X_{N_j}, ascending
    std::vector<std::vector<std::size_t>> evals;  // E_{s_j}, ascending (strictly inside)
    std::vector<std::string> warnings;
    double t_structure_s = 0.0;
    double t_search_s = 0.0;

    std::size_t size() const noexcept { return centers.size(); }
};

/// Builds the covering: centres on a grid over R reduced to the domain, radius from d_R
/// (or cfg.delta_override), memberships via the block structures. Empty subdomains are
/// pruned; InsufficientCoverage is raised if an evaluation point then lies in no subdomain.
Covering build_covering(const PointSet& nodes, const ConvexDomain& dom, const PumConfig& cfg,
                        const PointSet& evals);

/// Shepard weights W_j(p) = phi_j(p) / sum_k phi_k(p) over `active`, with phi_j the
/// Wendland C2 function centred at centre j and vanishing at distance `radius`.
std::vector<double> shepard_weights(std::span<const double> p, const PointSet& centers, double radius,
                                    std::span<const std::size_t> active);

struct LocalFit {
    std::size_t subdomain = 0;
    Eigen::VectorXd coefficients;
    double cond = 1.0;
    bool pivoted_fallback = false;
};

/// Solves the local kernel system on `local` (points carrying values). The interpolation
/// matrix is assembled through a local block structure.
LocalFit local_solve(const PointSet& local, const Kernel& kernel, std::size_t subdomain = 0);

/// Output of an evaluation pass.
struct Evaluation {
    std::vector<double> values;
    double max_pu_deviation = 0.0;     // max_i |sum_j W_j(x_i) - 1|
    double max_active_distance = 0.0;  // largest |x - centre_j| / radius over touched pairs
    std::size_t subdomain_touches = 0; // total (point, subdomain) pairs accumulated
    double t_search_s = 0.0;
    double t_eval_s = 0.0;
};

/// A fitted partition-of-unity interpolant.
class PumModel {
public:
    /// Fits on `nodes` (which must carry values) over `dom`. If `evals` is non-null the
    /// covering is also checked against those points.
    PumModel(PointSet nodes, ConvexDomain dom, PumConfig cfg, const PointSet* evals = nullptr);

    const PointSet& nodes() const noexcept { return nodes_; }
    const ConvexDomain& domain() const noexcept { return dom_; }
    const PumConfig& config() const noexcept { return cfg_; }
    const Covering& covering() const noexcept { return cover_; }
    const std::vector<LocalFit>& fits() const noexcept { return fits_; }

    double max_cond() const noexcept;
    double av_cond() const noexcept;
    double t_solve_s() const noexcept { return t_solve_s_; }

    /// Global interpolant at `pts`. A point not strictly inside any subdomain raises
    /// NoActiveSubdomain.
    Evaluation evaluate(const PointSet& pts) const;

    /// Indices of points not strictly inside any subdomain.
    std::vector<std::size_t> uncovered(const PointSet& pts) const;

private:
    PointSet nodes_;
    ConvexDomain dom_;
    PumConfig cfg_;
    Covering cover_;
    std::vector<LocalFit> fits_;
    double t_solve_s_ = 0.0;
};

struct PumResult {
    PointSet eval_points{2};
    std::vector<double> values;
    RunReport report;
};

struct InterpolateOptions {
    /// Ground truth for MAE/RMSE; empty to skip.
    std::function<double(std::span<const double>)> truth;
    /// Interpolation domain; the convex hull of the data sites when empty. Every data site
    /// must lie inside it.
    std::optional<ConvexDomain> domain;
    /// Explicit evaluation points; otherwise a grid of cfg.s_R points on R reduced to the domain.
    std::optional<PointSet> eval_points;
    /// Also evaluate at the data sites and record the largest interpolation residual.
    bool check_nodes = false;
    /// Compute the fill distance against the evaluation points.
    bool fill_distance = true;
};

/// End-to-end pipeline: hull, covering, block structures, local solves, blending.
PumResult pum_interpolate(const PointSet& nodes, const PumConfig& cfg, const InterpolateOptions& opts = {});

} // namespace blockpu
