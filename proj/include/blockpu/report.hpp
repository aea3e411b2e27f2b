#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace blockpu {

/// Accuracy, conditioning and timing summary of one pipeline run.
struct RunReport {
    std::size_t n = 0;       // data sites used
    std::size_t n_raw = 0;   // data sites before reduction to the domain (0 if unknown)
    std::size_t d = 0;       // subdomains after reduction and pruning
    std::size_t d_R = 0;
    std::size_t s = 0;       // evaluation points
    std::size_t q = 0;
    std::size_t pruned = 0;
    double delta = 0.0;
    double mae = 0.0;
    double rmse = 0.0;
    double max_cond = 0.0;
    double av_cond = 0.0;
    double fill_distance = 0.0;
    std::optional<double> rate;
    std::optional<double> node_residual;
    double pu_max_deviation = 0.0;
    std::string kernel;
    double epsilon = 0.0;
    std::string block_mode;
    double t_structure_s = 0.0;
    double t_search_s = 0.0;
    double t_solve_s = 0.0;
    double t_total_s = 0.0;
};

/// Flat JSON object. Timings are written unless `with_timings` is false, which makes
/// the document a pure function of the inputs.
std::string to_json(const RunReport& r, bool with_timings = true);

/// Parses a document written by to_json (missing keys keep their defaults).
RunReport report_from_json(const std::string& text);

} // namespace blockpu
