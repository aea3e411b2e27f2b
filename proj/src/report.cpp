#include "blockpu/report.hpp"

#include "blockpu/errors.hpp"

#include <json.hpp>

#include <cmath>

namespace blockpu {

namespace {
nlohmann::ordered_json number(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return v;
}

double read_number(const nlohmann::json& j, const char* key, double fallback)
{
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    return j.at(key).get<double>();
}
} // namespace

std::string to_json(const RunReport& r, bool with_timings)
{
    nlohmann::ordered_json j;
    j["N"] = r.n;
    j["N_raw"] = r.n_raw;
    j["d"] = r.d;
    j["d_R"] = r.d_R;
    j["s"] = r.s;
    j["delta"] = number(r.delta);
    j["q"] = r.q;
    j["pruned"] = r.pruned;
    j["kernel"] = r.kernel;
    j["epsilon"] = number(r.epsilon);
    j["block_mode"] = r.block_mode;
    j["mae"] = number(r.mae);
    j["rmse"] = number(r.rmse);
    j["max_cond"] = number(r.max_cond);
    j["av_cond"] = number(r.av_cond);
    j["fill_distance"] = number(r.fill_distance);
    j["rate"] = r.rate ? number(*r.rate) : nullptr;
    j["node_residual"] = r.node_residual ? number(*r.node_residual) : nullptr;
    j["pu_max_deviation"] = number(r.pu_max_deviation);
    if (with_timings) {
        j["t_structure_s"] = r.t_structure_s;
        j["t_search_s"] = r.t_search_s;
        j["t_solve_s"] = r.t_solve_s;
        j["t_total_s"] = r.t_total_s;
    }
    return j.dump(2) + "\n";
}

RunReport report_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed report: ") + e.what());
    }
    RunReport r;
    r.n = j.value("N", std::size_t{0});
    r.n_raw = j.value("N_raw", std::size_t{0});
    r.d = j.value("d", std::size_t{0});
    r.d_R = j.value("d_R", std::size_t{0});
    r.s = j.value("s", std::size_t{0});
    r.q = j.value("q", std::size_t{0});
    r.pruned = j.value("pruned", std::size_t{0});
    r.kernel = j.value("kernel", std::string{});
    r.block_mode = j.value("block_mode", std::string{});
    r.delta = read_number(j, "delta", 0.0);
    r.epsilon = read_number(j, "epsilon", 0.0);
    r.mae = read_number(j, "mae", NAN);
    r.rmse = read_number(j, "rmse", NAN);
    r.max_cond = read_number(j, "max_cond", NAN);
    r.av_cond = read_number(j, "av_cond", NAN);
    r.fill_distance = read_number(j, "fill_distance", NAN);
    if (j.contains("rate") && !j["rate"].is_null()) r.rate = j["rate"].get<double>();
    if (j.contains("node_residual") && !j["node_residual"].is_null()) r.node_residual = j["node_residual"].get<double>();
    r.pu_max_deviation = read_number(j, "pu_max_deviation", 0.0);
    r.t_structure_s = read_number(j, "t_structure_s", 0.0);
    r.t_search_s = read_number(j, "t_search_s", 0.0);
    r.t_solve_s = read_number(j, "t_solve_s", 0.0);
    r.t_total_s = read_number(j, "t_total_s", 0.0);
    return r;
}

} // namespace blockpu
