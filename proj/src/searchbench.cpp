#include "blockpu/searchbench.hpp"

#include "blockpu/pum.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>

namespace blockpu {
namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point a, Clock::time_point b)
{
    return std::chrono::duration<double>(b - a).count();
}

} // namespace

std::vector<Neighbor> brute_range_search(const PointSet& pts, std::span<const double> center, double radius)
{
    std::vector<Neighbor> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = distance(pts[i], center);
        if (d <= radius) out.push_back({i, d});
    }
    std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
    });
    return out;
}

SearchBenchRow bench_search(std::size_t n, const SearchBenchOptions& opts)
{
    const int dim = opts.dim;
    const int repeats = std::max(1, opts.repeats);
    const PointSet pts = halton(n, dim);
    AxisBox unit{dim, {}, {}};
    for (int m = 0; m < dim; ++m) unit.hi[m] = 1.0;
    const BoundingCube box = bounding_cube(unit);

    SearchBenchRow row;
    row.n = n;
    const std::size_t d_R = suggest_d_R(n, 1.0, box.edge, dim);
    row.radius = subdomain_radius(box.edge, d_R, dim);
    row.q = blocks_per_side(box.edge, row.radius, opts.mode);
    const PointSet centers = grid_on_rect(unit, d_R);
    row.queries = centers.size();

    row.t_ps = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = Clock::now();
        const BlockStructure s(pts, box, row.q, opts.mode);
        row.t_ps = std::min(row.t_ps, seconds(t0, Clock::now()));
    }
    const BlockStructure blocks(pts, box, row.q, opts.mode);

    std::vector<Neighbor> found;
    std::size_t total_candidates = 0;
    row.t_rs = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
        total_candidates = 0;
        row.max_candidates = 0;
        const auto t0 = Clock::now();
        for (std::size_t j = 0; j < centers.size(); ++j) {
            SearchStats st;
            blocks.range_search(centers[j], row.radius, found, &st);
            total_candidates += st.candidates;
            row.max_candidates = std::max(row.max_candidates, st.candidates);
        }
        row.t_rs = std::min(row.t_rs, seconds(t0, Clock::now()));
    }
    row.t_rs_per_query = row.t_rs / static_cast<double>(row.queries);
    row.mean_candidates = static_cast<double>(total_candidates) / static_cast<double>(row.queries);

    const std::size_t sample = std::min(row.queries, std::max<std::size_t>(1, opts.brute_sample));
    const std::size_t stride = row.queries / sample;
    row.brute_queries = sample;
    row.brute_match = true;
    std::vector<std::vector<Neighbor>> brute(sample);
    const auto t0 = Clock::now();
    for (std::size_t t = 0; t < sample; ++t) brute[t] = brute_range_search(pts, centers[t * stride], row.radius);
    row.t_brute_per_query = seconds(t0, Clock::now()) / static_cast<double>(sample);
    row.t_brute_est = row.t_brute_per_query * static_cast<double>(row.queries);
    for (std::size_t t = 0; t < sample; ++t) {
        blocks.range_search(centers[t * stride], row.radius, found);
        if (found != brute[t]) row.brute_match = false;
    }
    return row;
}

std::vector<SearchBenchRow> bench_search_ladder(const std::vector<std::size_t>& sizes, const SearchBenchOptions& opts)
{
    std::vector<SearchBenchRow> rows;
    rows.reserve(sizes.size());
    for (std::size_t n : sizes) rows.push_back(bench_search(n, opts));
    return rows;
}

std::string format_search_table(const std::vector<SearchBenchRow>& rows)
{
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%10s %8s %6s %11s %11s %11s %9s %7s %11s %11s %6s\n", "N", "queries", "q", "t_ps[s]",
                  "t_rs[s]", "t_rs/query", "mean_cand", "max", "brute/query", "brute_est", "match");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%10zu %8zu %6zu %11.3e %11.3e %11.3e %9.1f %7zu %11.3e %11.3e %6s\n", r.n,
                      r.queries, r.q, r.t_ps, r.t_rs, r.t_rs_per_query, r.mean_candidates, r.max_candidates,
                      r.t_brute_per_query, r.t_brute_est, r.brute_match ? "yes" : "NO");
        out += buf;
    }
    if (rows.size() > 1) {
        std::snprintf(buf, sizeof buf, "\n%10s %10s %11s %11s %11s %11s\n", "N_k", "N_k/N_k-1", "t_ps ratio",
                      "t_rs ratio", "per-query", "brute ratio");
        out += buf;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const auto& a = rows[k - 1];
            const auto& b = rows[k];
            std::snprintf(buf, sizeof buf, "%10zu %10.2f %11.3f %11.3f %11.3f %11.3f\n", b.n,
                          static_cast<double>(b.n) / static_cast<double>(a.n), b.t_ps / a.t_ps, b.t_rs / a.t_rs,
                          b.t_rs_per_query / a.t_rs_per_query, b.t_brute_est / a.t_brute_est);
            out += buf;
        }
    }
    return out;
}

std::string search_rows_to_json(const std::vector<SearchBenchRow>& rows)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        arr.push_back({{"N", r.n},
                       {"queries", r.queries},
                       {"q", r.q},
                       {"radius", r.radius},
                       {"t_ps", r.t_ps},
                       {"t_rs", r.t_rs},
                       {"t_rs_per_query", r.t_rs_per_query},
                       {"mean_candidates", r.mean_candidates},
                       {"max_candidates", r.max_candidates},
                       {"brute_queries", r.brute_queries},
                       {"t_brute_per_query", r.t_brute_per_query},
                       {"t_brute_est", r.t_brute_est},
                       {"brute_match", r.brute_match}});
    }
    return arr.dump(2) + "\n";
}

} // namespace blockpu
