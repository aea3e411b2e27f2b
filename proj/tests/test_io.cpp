#include "blockpu/errors.hpp"
#include "blockpu/io.hpp"
#include "blockpu/report.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

using namespace blockpu;

TEST_CASE("reading point files")
{
    std::istringstream in("# header\n\n0.5 0.25 1.0\n  0.1,0.2,0.3\n# trailing comment\n1e-1 2E-1 -3\n");
    const PointSet p = read_points(in, 2);
    REQUIRE(p.size() == 3);
    REQUIRE(p.has_values());
    CHECK(p.coord(0, 0) == 0.5);
    CHECK(p.coord(1, 1) == 0.2);
    CHECK(p.values()[2] == -3.0);

    std::istringstream bare("0 0\n1 1\n");
    const PointSet q = read_points(bare, 2);
    CHECK(q.size() == 2);
    CHECK_FALSE(q.has_values());

    std::istringstream empty("# nothing\n");
    CHECK(read_points(empty, 3).empty());
}

TEST_CASE("malformed point files")
{
    std::istringstream wrong_cols("0 0 0 0\n");
    CHECK_THROWS_AS(read_points(wrong_cols, 2), IoError);
    std::istringstream ragged("0 0\n1 1 1\n");
    CHECK_THROWS_AS(read_points(ragged, 2), IoError);
    std::istringstream text("0 abc\n");
    CHECK_THROWS_AS(read_points(text, 2), IoError);
    std::istringstream inf("0 inf\n");
    CHECK_THROWS_AS(read_points(inf, 2), IoError);
    std::istringstream nan("nan 0\n");
    CHECK_THROWS_AS(read_points(nan, 2), IoError);
    CHECK_THROWS_AS(read_points(std::filesystem::path("/nonexistent/blockpu/points.txt"), 2), IoError);
}

TEST_CASE("point files round trip exactly")
{
    PointSet p(3);
    p.push_back(Coords{0.1, 1.0 / 3.0, 2.0 / 7.0}, std::numbers::pi);
    p.push_back(Coords{1e-300, -5e17, 0.0}, -0.0);
    std::stringstream ss;
    write_points(ss, p);
    const PointSet back = read_points(ss, 3);
    CHECK(back.coords() == p.coords());
    CHECK(back.values() == p.values());

    const auto path = std::filesystem::temp_directory_path() / "blockpu_test_values.txt";
    const std::vector<double> v{1.5, 2.5};
    write_values(path, p, v);
    const PointSet vals = read_points(path, 3);
    CHECK(vals.values() == v);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_values(path, p, std::vector<double>{1.0}), LengthMismatch);
}

TEST_CASE("report JSON")
{
    RunReport r;
    r.n = 1486;
    r.n_raw = 2499;
    r.d = 300;
    r.s = 1000;
    r.q = 7;
    r.delta = 0.125;
    r.mae = 1e-3;
    r.rmse = 7e-5;
    r.max_cond = 1.5e8;
    r.av_cond = 2e6;
    r.fill_distance = 0.03;
    r.rate = 2.29;
    r.kernel = "wendland-c2";
    r.epsilon = 0.5;
    r.block_mode = "paper";
    r.t_total_s = 0.25;

    const auto j = nlohmann::json::parse(to_json(r));
    for (const char* key : {"N", "d", "s", "delta", "q", "mae", "rmse", "max_cond", "av_cond", "fill_distance",
                            "rate", "t_structure_s", "t_search_s", "t_solve_s", "t_total_s"}) {
        CHECK_MESSAGE(j.contains(key), key);
    }
    CHECK(j["N"] == 1486);
    CHECK(j["node_residual"].is_null());

    const RunReport back = report_from_json(to_json(r));
    CHECK(back.n == r.n);
    CHECK(back.rmse == r.rmse);
    CHECK(back.rate == r.rate);
    CHECK(back.kernel == r.kernel);
    CHECK(back.t_total_s == r.t_total_s);
    CHECK_FALSE(back.node_residual.has_value());

    const auto quiet = nlohmann::json::parse(to_json(r, false));
    CHECK_FALSE(quiet.contains("t_total_s"));

    r.mae = std::numeric_limits<double>::quiet_NaN();
    CHECK(nlohmann::json::parse(to_json(r))["mae"].is_null());
    CHECK_THROWS_AS(report_from_json("{not json"), IoError);
}
