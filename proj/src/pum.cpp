#include "blockpu/pum.hpp"

#include "blockpu/errors.hpp"
#include "blockpu/validation.hpp"
#include "parallel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace blockpu {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Subdomains are processed in fixed-size chunks so that per-subdomain scratch stays bounded
// while accumulation into the global arrays remains in ascending subdomain order.
constexpr std::size_t kChunk = 512;

BoundingCube local_cube(const PointSet& pts, double support)
{
    BoundingCube cube = bounding_cube(bounding_rect(pts));
    cube.edge = std::max(cube.edge, support);
    return cube;
}

// Entries of the local interpolation/evaluation matrices come from a block structure
// sized by the kernel support.
BlockStructure local_structure(const PointSet& local, const Kernel& kernel)
{
    const BoundingCube cube = local_cube(local, kernel.support());
    return BlockStructure(local, cube, blocks_per_side(cube.edge, kernel.support(), BlockMode::cover),
                          BlockMode::cover);
}

// Block structure over query points. Queries inside L reuse the covering's cube; otherwise
// the cube is widened to enclose them and q is rederived for the same radius.
BlockStructure query_structure(const PointSet& pts, const BoundingCube& box, std::size_t q, double radius,
                               BlockMode mode)
{
    const AxisBox rect = bounding_rect(pts);
    const double tol = 1e-12 * box.edge;
    double lo = box.origin[0];
    double hi = box.origin[0] + box.edge;
    for (int m = 0; m < pts.dim(); ++m) {
        lo = std::min(lo, rect.lo[m]);
        hi = std::max(hi, rect.hi[m]);
    }
    if (lo >= box.origin[0] - tol && hi <= box.origin[0] + box.edge + tol) return BlockStructure(pts, box, q, mode);
    BoundingCube wide{box.dim, {}, hi - lo};
    for (int m = 0; m < pts.dim(); ++m) wide.origin[m] = lo;
    return BlockStructure(pts, wide, blocks_per_side(wide.edge, radius, mode), mode);
}

} // namespace

std::size_t suggest_d_R(std::size_t n, double measure, double edge, int dim)
{
    if (n < 1 || !(measure > 0.0)) throw InvalidArgument("suggest_d_R needs N >= 1 and measure > 0");
    const double per_side = std::floor(0.5 * edge * std::pow(static_cast<double>(n) / measure, 1.0 / dim) * (1.0 + 1e-12));
    std::size_t d = 1;
    for (int m = 0; m < dim; ++m) d *= static_cast<std::size_t>(per_side);
    return std::max<std::size_t>(1, d);
}

double subdomain_radius(double edge, std::size_t d_R, int dim)
{
    if (d_R < 1) throw InvalidArgument("d_R must be >= 1");
    return edge * std::sqrt(2.0) / std::pow(static_cast<double>(d_R), 1.0 / dim);
}

Covering build_covering(const PointSet& nodes, const ConvexDomain& dom, const PumConfig& cfg,
                        const PointSet& evals)
{
    if (nodes.empty()) throw InvalidArgument("no data sites");
    if (nodes.dim() != dom.dim || evals.dim() != dom.dim) throw InvalidArgument("dimension mismatch");
    const int dim = dom.dim;
    const int workers = detail::worker_count(cfg.execution == Execution::parallel, cfg.threads);

    Covering cov;
    cov.d_R = cfg.d_R > 0 ? cfg.d_R : suggest_d_R(nodes.size(), dom.measure, dom.box.edge, dim);
    cov.radius = cfg.delta_override ? *cfg.delta_override : subdomain_radius(dom.box.edge, cov.d_R, dim);
    if (!(cov.radius > 0.0)) throw InvalidArgument("subdomain radius must be positive");

    const PointSet grid = grid_on_rect(dom.rect, cov.d_R);
    const auto inside = indices_in_domain(grid, dom);
    if (inside.empty()) throw InsufficientCoverage("no subdomain centre lies inside the domain");
    const PointSet candidates = grid.subset(inside);

    auto t0 = Clock::now();
    cov.q = blocks_per_side(dom.box.edge, cov.radius, cfg.block_mode);
    const BlockStructure node_blocks(nodes, dom.box, cov.q, cfg.block_mode);
    std::optional<BlockStructure> eval_blocks;
    if (!evals.empty()) eval_blocks.emplace(evals, dom.box, cov.q, cfg.block_mode);
    cov.t_structure_s = seconds_since(t0);

    t0 = Clock::now();
    const std::size_t d = candidates.size();
    std::vector<std::vector<std::size_t>> node_lists(d);
    std::vector<std::vector<std::size_t>> eval_lists(d);
    detail::for_each_index(0, d, workers, [&](std::size_t j) {
        std::vector<Neighbor> found;
        node_blocks.range_search(candidates[j], cov.radius, found);
        auto& nl = node_lists[j];
        nl.reserve(found.size());
        for (const Neighbor& nb : found) nl.push_back(nb.index);
        std::sort(nl.begin(), nl.end());
        if (eval_blocks) {
            eval_blocks->range_search(candidates[j], cov.radius, found);
            auto& el = eval_lists[j];
            for (const Neighbor& nb : found) {
                if (nb.distance < cov.radius) el.push_back(nb.index);
            }
            std::sort(el.begin(), el.end());
        }
    });
    cov.t_search_s = seconds_since(t0);

    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < d; ++j) {
        if (!node_lists[j].empty()) keep.push_back(j);
    }
    cov.pruned = d - keep.size();
    if (cov.pruned > 0) {
        cov.warnings.push_back("pruned " + std::to_string(cov.pruned) + " of " + std::to_string(d) +
                               " subdomains without data sites");
    }
    if (keep.empty()) throw InsufficientCoverage("every subdomain is empty");
    cov.centers = candidates.subset(keep);
    cov.nodes.reserve(keep.size());
    cov.evals.reserve(keep.size());
    for (std::size_t j : keep) {
        cov.nodes.push_back(std::move(node_lists[j]));
        cov.evals.push_back(std::move(eval_lists[j]));
    }

    if (!evals.empty()) {
        std::vector<char> covered(evals.size(), 0);
        for (const auto& el : cov.evals) {
            for (std::size_t i : el) covered[i] = 1;
        }
        const auto missing = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 0));
        if (missing > 0) {
            throw InsufficientCoverage(std::to_string(missing) + " of " + std::to_string(evals.size()) +
                                       " evaluation points lie in no nonempty subdomain");
        }
    }
    return cov;
}

std::vector<double> shepard_weights(std::span<const double> p, const PointSet& centers, double radius,
                                    std::span<const std::size_t> active)
{
    if (active.empty()) throw NoActiveSubdomain("no subdomain contains the point");
    const double eps = 1.0 / radius;
    std::vector<double> w(active.size());
    double total = 0.0;
    for (std::size_t k = 0; k < active.size(); ++k) {
        w[k] = phi_wendland_c2(distance(p, centers[active[k]]), eps);
        total += w[k];
    }
    if (!(total > 0.0)) throw NoActiveSubdomain("point lies on the boundary of every active subdomain");
    for (double& x : w) x /= total;
    return w;
}

LocalFit local_solve(const PointSet& local, const Kernel& kernel, std::size_t subdomain)
{
    if (local.empty()) throw InvalidArgument("local problem without data sites");
    if (!local.has_values()) throw InvalidArgument("local data sites carry no values");
    const auto n = static_cast<Eigen::Index>(local.size());

    const BlockStructure blocks = local_structure(local, kernel);
    const Eigen::MatrixXd phi = sparse_distance_matrix(local, blocks, kernel).to_dense();
    const Eigen::Map<const Eigen::VectorXd> f(local.values().data(), n);

    LocalFit fit;
    fit.subdomain = subdomain;

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(phi, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd lam = eig.eigenvalues().cwiseAbs();
    const double lo = lam.minCoeff();
    fit.cond = lo > 0.0 ? lam.maxCoeff() / lo : std::numeric_limits<double>::infinity();

    const Eigen::LLT<Eigen::MatrixXd> llt(phi);
    if (llt.info() == Eigen::Success) {
        fit.coefficients = llt.solve(f);
    } else {
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(phi);
        if (lu.rank() < n) {
            throw SingularLocalSystem("subdomain " + std::to_string(subdomain) + " (cond ~ " +
                                      std::to_string(fit.cond) + ")");
        }
        fit.coefficients = lu.solve(f);
        fit.pivoted_fallback = true;
    }
    if (!fit.coefficients.allFinite()) {
        throw SingularLocalSystem("subdomain " + std::to_string(subdomain) + " produced non-finite coefficients");
    }
    return fit;
}

PumModel::PumModel(PointSet nodes, ConvexDomain dom, PumConfig cfg, const PointSet* evals)
    : nodes_(std::move(nodes)), dom_(std::move(dom)), cfg_(std::move(cfg))
{
    if (!nodes_.has_values()) throw InvalidArgument("data sites carry no values");
    cover_ = build_covering(nodes_, dom_, cfg_, evals ? *evals : PointSet(nodes_.dim()));

    const auto t0 = Clock::now();
    const int workers = detail::worker_count(cfg_.execution == Execution::parallel, cfg_.threads);
    fits_.resize(cover_.size());
    detail::for_each_index(0, cover_.size(), workers, [&](std::size_t j) {
        fits_[j] = local_solve(nodes_.subset(cover_.nodes[j]), cfg_.kernel, j);
    });
    t_solve_s_ = seconds_since(t0);
}

double PumModel::max_cond() const noexcept
{
    double worst = 0.0;
    for (const LocalFit& f : fits_) worst = std::max(worst, f.cond);
    return worst;
}

double PumModel::av_cond() const noexcept
{
    if (fits_.empty()) return 0.0;
    double sum = 0.0;
    for (const LocalFit& f : fits_) sum += f.cond;
    return sum / static_cast<double>(fits_.size());
}

std::vector<std::size_t> PumModel::uncovered(const PointSet& pts) const
{
    if (pts.empty()) return {};
    const BlockStructure blocks = query_structure(pts, dom_.box, cover_.q, cover_.radius, cfg_.block_mode);
    std::vector<char> covered(pts.size(), 0);
    std::vector<Neighbor> found;
    for (std::size_t j = 0; j < cover_.size(); ++j) {
        blocks.range_search(cover_.centers[j], cover_.radius, found);
        for (const Neighbor& nb : found) {
            if (nb.distance < cover_.radius) covered[nb.index] = 1;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!covered[i]) out.push_back(i);
    }
    return out;
}

Evaluation PumModel::evaluate(const PointSet& pts) const
{
    if (pts.dim() != nodes_.dim()) throw InvalidArgument("dimension mismatch in evaluate");
    Evaluation ev;
    ev.values.assign(pts.size(), 0.0);
    if (pts.empty()) return ev;

    const int workers = detail::worker_count(cfg_.execution == Execution::parallel, cfg_.threads);
    const double delta = cover_.radius;
    const double weight_eps = 1.0 / delta;
    const std::size_t d = cover_.size();

    auto t0 = Clock::now();
    const BlockStructure blocks = query_structure(pts, dom_.box, cover_.q, delta, cfg_.block_mode);

    // Pass 1: Shepard denominators sum_j phi_j(x_i).
    std::vector<double> denom(pts.size(), 0.0);
    std::vector<std::vector<Neighbor>> hits(std::min(d, kChunk));
    for (std::size_t c0 = 0; c0 < d; c0 += kChunk) {
        const std::size_t c1 = std::min(d, c0 + kChunk);
        detail::for_each_index(c0, c1, workers, [&](std::size_t j) {
            blocks.range_search(cover_.centers[j], delta, hits[j - c0]);
        });
        for (std::size_t j = c0; j < c1; ++j) {
            for (const Neighbor& nb : hits[j - c0]) {
                if (nb.distance < delta) denom[nb.index] += phi_wendland_c2(nb.distance, weight_eps);
            }
        }
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(denom[i] > 0.0)) {
            throw NoActiveSubdomain("evaluation point " + std::to_string(i) + " lies in no subdomain");
        }
    }
    ev.t_search_s = seconds_since(t0);

    // Pass 2: local interpolants R_j blended with W_j = phi_j / denom.
    t0 = Clock::now();
    struct Contribution {
        std::vector<std::size_t> index;
        std::vector<double> local_value;
        std::vector<double> distance;
    };
    std::vector<Contribution> contrib(std::min(d, kChunk));
    std::vector<double> weight_sum(pts.size(), 0.0);
    for (std::size_t c0 = 0; c0 < d; c0 += kChunk) {
        const std::size_t c1 = std::min(d, c0 + kChunk);
        detail::for_each_index(c0, c1, workers, [&](std::size_t j) {
            Contribution& out = contrib[j - c0];
            out.index.clear();
            out.local_value.clear();
            out.distance.clear();
            std::vector<Neighbor> found;
            blocks.range_search(cover_.centers[j], delta, found);
            for (const Neighbor& nb : found) {
                if (nb.distance < delta) {
                    out.index.push_back(nb.index);
                    out.distance.push_back(nb.distance);
                }
            }
            if (out.index.empty()) return;
            const PointSet local_nodes = nodes_.subset(cover_.nodes[j]);
            const BlockStructure local_blocks = local_structure(local_nodes, cfg_.kernel);
            const PointSet local_evals = pts.subset(out.index);
            const SparseMatrix phi_eval = sparse_distance_matrix(local_evals, local_blocks, cfg_.kernel);
            out.local_value.assign(out.index.size(), 0.0);
            const Eigen::VectorXd& c = fits_[j].coefficients;
            for (const Triplet& t : phi_eval.entries) {
                out.local_value[t.row] += t.value * c(static_cast<Eigen::Index>(t.col));
            }
        });
        for (std::size_t j = c0; j < c1; ++j) {
            const Contribution& cj = contrib[j - c0];
            for (std::size_t k = 0; k < cj.index.size(); ++k) {
                const std::size_t i = cj.index[k];
                const double w = phi_wendland_c2(cj.distance[k], weight_eps) / denom[i];
                ev.values[i] += cj.local_value[k] * w;
                weight_sum[i] += w;
                ev.max_active_distance = std::max(ev.max_active_distance, cj.distance[k] / delta);
                ++ev.subdomain_touches;
            }
        }
    }
    for (double s : weight_sum) ev.max_pu_deviation = std::max(ev.max_pu_deviation, std::abs(s - 1.0));
    ev.t_eval_s = seconds_since(t0);
    return ev;
}

PumResult pum_interpolate(const PointSet& nodes, const PumConfig& cfg, const InterpolateOptions& opts)
{
    const auto t_start = Clock::now();
    if (!nodes.has_values()) throw InvalidArgument("data sites carry no values");

    ConvexDomain dom;
    if (opts.domain) {
        dom = *opts.domain;
        if (dom.dim != nodes.dim()) throw InvalidArgument("domain and data sites differ in dimension");
        if (indices_in_domain(nodes, dom).size() != nodes.size()) {
            throw InvalidArgument("data sites lie outside the given domain");
        }
    } else {
        dom = convex_hull(nodes);
    }
    PumResult result;
    if (opts.eval_points) {
        result.eval_points = *opts.eval_points;
    } else {
        if (cfg.s_R < 1) throw InvalidArgument("evaluation grid count s_R must be >= 1");
        result.eval_points = reduce_to_domain(grid_on_rect(dom.rect, cfg.s_R), dom);
    }

    RunReport& rep = result.report;
    rep.kernel = cfg.kernel.name();
    rep.epsilon = cfg.kernel.epsilon();
    rep.block_mode = cfg.block_mode == BlockMode::cover ? "cover" : "paper";

    const PumModel model(nodes, std::move(dom), cfg, &result.eval_points);
    const Evaluation ev = model.evaluate(result.eval_points);
    result.values = ev.values;

    const Covering& cov = model.covering();
    rep.n = nodes.size();
    rep.d = cov.size();
    rep.d_R = cov.d_R;
    rep.s = result.eval_points.size();
    rep.q = cov.q;
    rep.pruned = cov.pruned;
    rep.delta = cov.radius;
    rep.max_cond = model.max_cond();
    rep.av_cond = model.av_cond();
    rep.pu_max_deviation = ev.max_pu_deviation;

    if (opts.truth) {
        std::vector<double> truth(result.eval_points.size());
        for (std::size_t i = 0; i < truth.size(); ++i) truth[i] = opts.truth(result.eval_points[i]);
        rep.mae = mae(truth, result.values);
        rep.rmse = rmse(truth, result.values);
    } else {
        rep.mae = std::numeric_limits<double>::quiet_NaN();
        rep.rmse = std::numeric_limits<double>::quiet_NaN();
    }
    if (opts.check_nodes) {
        const Evaluation at_nodes = model.evaluate(nodes);
        rep.node_residual = mae(nodes.values(), at_nodes.values);
        rep.pu_max_deviation = std::max(rep.pu_max_deviation, at_nodes.max_pu_deviation);
    }
    rep.fill_distance = opts.fill_distance ? fill_distance(nodes, result.eval_points)
                                           : std::numeric_limits<double>::quiet_NaN();

    rep.t_structure_s = cov.t_structure_s;
    rep.t_search_s = cov.t_search_s + ev.t_search_s;
    rep.t_solve_s = model.t_solve_s() + ev.t_eval_s;
    rep.t_total_s = seconds_since(t_start);
    return result;
}

} // namespace blockpu
