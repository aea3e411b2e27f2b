#pragma once

#include "blockpu/blockpart.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace blockpu {

struct SearchBenchOptions {
    int dim = 2;
    BlockMode mode = BlockMode::cover;
    std::size_t brute_sample = 1000;  // queries timed and cross-checked against brute force
    int repeats = 3;                  // timings are the minimum over repeats
};

/// One ladder row. Data are the first N Halton points of the unit square/cube; queries
/// are the d_R subdomain centres that the pipeline would use, searched with its radius.
struct SearchBenchRow {
    std::size_t n = 0;
    std::size_t queries = 0;
    std::size_t q = 0;
    double radius = 0.0;
    double t_ps = 0.0;           // structure build, seconds
    double t_rs = 0.0;           // all range searches, seconds
    double t_rs_per_query = 0.0;
    double mean_candidates = 0.0;
    std::size_t max_candidates = 0;
    std::size_t brute_queries = 0;
    double t_brute_per_query = 0.0;
    double t_brute_est = 0.0;    // per-query brute time scaled to all queries
    bool brute_match = false;    // identical result sets on the brute-force sample
};

SearchBenchRow bench_search(std::size_t n, const SearchBenchOptions& opts = {});
std::vector<SearchBenchRow> bench_search_ladder(const std::vector<std::size_t>& sizes,
                                                const SearchBenchOptions& opts = {});

/// Brute-force reference: every point within `radius` (inclusive), ordered by distance then index.
std::vector<Neighbor> brute_range_search(const PointSet& pts, std::span<const double> center, double radius);

/// Table with one row per size plus consecutive ratios t(N_k)/t(N_{k-1}).
std::string format_search_table(const std::vector<SearchBenchRow>& rows);
/// JSON array with one object per row.
std::string search_rows_to_json(const std::vector<SearchBenchRow>& rows);

} // namespace blockpu
