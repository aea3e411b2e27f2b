#include "blockpu/errors.hpp"
#include "blockpu/pum.hpp"
#include "blockpu/shapes.hpp"
#include "blockpu/validation.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace blockpu;

namespace {

PointSet with_values(PointSet pts, TestFunction f)
{
    pts.set_values(eval_test_function(f, pts));
    return pts;
}

PointSet pentagon_nodes(std::size_t raw)
{
    return with_values(halton_in_shape(Shape::pentagon, raw), TestFunction::f1);
}

InterpolateOptions pentagon_options()
{
    InterpolateOptions opts;
    opts.truth = [](std::span<const double> p) { return eval_test_function(TestFunction::f1, p); };
    opts.domain = shape_domain(Shape::pentagon);
    return opts;
}

} // namespace

TEST_CASE("suggest_d_R")
{
    CHECK(suggest_d_R(1024, 1.0, 1.0, 2) == 256);
    CHECK(suggest_d_R(1, 1.0, 1.0, 2) == 1);
    CHECK(suggest_d_R(4096, 1.0, 1.0, 3) == 512);
    CHECK_THROWS_AS(suggest_d_R(0, 1.0, 1.0, 2), InvalidArgument);
}

TEST_CASE("subdomain_radius")
{
    CHECK(subdomain_radius(1.0, 256, 2) == doctest::Approx(std::sqrt(2.0) / 16).epsilon(1e-15));
    CHECK(subdomain_radius(1.0, 1, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(subdomain_radius(2.0, 512, 3) == doctest::Approx(0.35355339059327373).epsilon(1e-14));
    CHECK_THROWS_AS(subdomain_radius(1.0, 0, 2), InvalidArgument);
}

TEST_CASE("covering memberships match brute force")
{
    const PointSet nodes = pentagon_nodes(2499);
    const ConvexDomain dom = shape_domain(Shape::pentagon);
    PumConfig cfg;
    const PointSet evals = reduce_to_domain(grid_on_rect(dom.rect, 1600), dom);
    const Covering cov = build_covering(nodes, dom, cfg, evals);
    CHECK(cov.size() <= cov.d_R);
    CHECK(cov.pruned == 0);
    CHECK(cov.radius == doctest::Approx(subdomain_radius(dom.box.edge, cov.d_R, 2)));

    std::vector<char> covered(evals.size(), 0);
    for (std::size_t j = 0; j < cov.size(); ++j) {
        REQUIRE(contains(dom, cov.centers[j]));
        std::vector<std::size_t> expect_nodes;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (distance(nodes[i], cov.centers[j]) <= cov.radius) expect_nodes.push_back(i);
        }
        REQUIRE(cov.nodes[j] == expect_nodes);
        std::vector<std::size_t> expect_evals;
        for (std::size_t i = 0; i < evals.size(); ++i) {
            if (distance(evals[i], cov.centers[j]) < cov.radius) expect_evals.push_back(i);
        }
        REQUIRE(cov.evals[j] == expect_evals);
        for (std::size_t i : cov.evals[j]) covered[i] = 1;
    }
    for (char c : covered) REQUIRE(c == 1);
}

TEST_CASE("single node covering")
{
    PointSet one(2);
    one.push_back(Coords{0.3, 0.3, 0.0}, 1.0);
    PumConfig cfg;
    cfg.d_R = 1;
    const Covering cov = build_covering(one, shape_domain(Shape::square), cfg, PointSet(2));
    REQUIRE(cov.size() == 1);
    CHECK(cov.nodes[0] == std::vector<std::size_t>{0});
}

TEST_CASE("clustered nodes leave evaluation points uncovered")
{
    PointSet nodes(2);
    for (std::size_t i = 0; i < 200; ++i) {
        const PointSet h = halton(200, 2);
        nodes.push_back(Coords{0.1 * h.coord(i, 0), 0.1 * h.coord(i, 1), 0.0});
    }
    const ConvexDomain dom = shape_domain(Shape::square);
    PumConfig cfg;
    cfg.d_R = 100;
    const PointSet evals = grid_on_rect(dom.rect, 400);
    Covering cov;
    CHECK_THROWS_AS(cov = build_covering(nodes, dom, cfg, evals), InsufficientCoverage);
}

TEST_CASE("empty subdomains are pruned with a warning")
{
    PointSet nodes = halton(300, 2);
    std::vector<std::size_t> left;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes.coord(i, 0) < 0.5) left.push_back(i);
    }
    const PointSet half = nodes.subset(left);
    PumConfig cfg;
    cfg.d_R = 25;
    const Covering cov = build_covering(half, shape_domain(Shape::square), cfg, PointSet(2));
    CHECK(cov.pruned > 0);
    CHECK(cov.size() + cov.pruned == 25);
    CHECK_FALSE(cov.warnings.empty());
    for (const auto& nl : cov.nodes) CHECK_FALSE(nl.empty());
}

TEST_CASE("shepard weights")
{
    PointSet centers(2);
    centers.push_back(Coords{0.0, 0.0, 0.0});
    centers.push_back(Coords{1.0, 0.0, 0.0});
    centers.push_back(Coords{0.0, 1.0, 0.0});
    centers.push_back(Coords{0.0, 0.0, 0.0});

    const std::vector<std::size_t> one{0};
    const auto w1 = shepard_weights(Coords{0.3, 0.2, 0.0}, centers, 1.0, one);
    REQUIRE(w1.size() == 1);
    CHECK(w1[0] == 1.0);

    const std::vector<std::size_t> twins{0, 3};
    const auto w2 = shepard_weights(Coords{0.1, 0.2, 0.0}, centers, 1.0, twins);
    CHECK(w2[0] == 0.5);
    CHECK(w2[1] == 0.5);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.05, 0.45);
    const std::vector<std::size_t> three{0, 1, 2};
    for (int t = 0; t < 100; ++t) {
        const Coords p{u(rng), u(rng), 0.0};
        const auto w = shepard_weights(p, centers, 1.2, three);
        double s = 0.0;
        for (double x : w) {
            CHECK(x >= 0.0);
            s += x;
        }
        CHECK(std::abs(s - 1.0) <= 1e-15);
    }
    CHECK_THROWS_AS(shepard_weights(Coords{0.0, 0.0, 0.0}, centers, 1.0, std::vector<std::size_t>{}),
                    NoActiveSubdomain);
}

TEST_CASE("local solves")
{
    const Kernel k(KernelId::wendland_c2, 0.5);
    PointSet one(2);
    one.push_back(Coords{0.2, 0.7, 0.0}, 3.5);
    const LocalFit f1 = local_solve(one, k);
    CHECK(f1.coefficients.size() == 1);
    CHECK(f1.coefficients(0) == 3.5);
    CHECK(f1.cond == 1.0);

    PointSet pts = halton(80, 2);
    std::vector<double> ones(pts.size(), 1.0);
    pts.set_values(ones);
    const LocalFit fc = local_solve(pts, k, 4);
    CHECK(fc.subdomain == 4);
    CHECK(fc.cond >= 1.0);
    CHECK_FALSE(fc.pivoted_fallback);
    const Eigen::MatrixXd phi = dense_distance_matrix(pts, pts, k);
    const Eigen::VectorXd r = phi * fc.coefficients - Eigen::VectorXd::Ones(80);
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-10);

    PointSet dup(2);
    dup.push_back(Coords{0.1, 0.1, 0.0}, 1.0);
    dup.push_back(Coords{0.1, 0.1, 0.0}, 2.0);
    dup.push_back(Coords{0.4, 0.1, 0.0}, 2.0);
    CHECK_THROWS_AS(local_solve(dup, k), SingularLocalSystem);
}

TEST_CASE("pentagon pipeline invariants")
{
    const PointSet nodes = pentagon_nodes(2499);
    PumConfig cfg;
    cfg.s_R = 1600;
    InterpolateOptions opts = pentagon_options();
    opts.check_nodes = true;
    const PumResult res = pum_interpolate(nodes, cfg, opts);
    const RunReport& r = res.report;
    CHECK(r.pu_max_deviation <= 1e-12);
    REQUIRE(r.node_residual.has_value());
    CHECK(*r.node_residual <= (r.av_cond <= 1e9 ? 1e-6 : 1e-4));
    CHECK(r.av_cond <= r.max_cond);
    CHECK(r.av_cond >= 1.0);
    CHECK(r.mae >= r.rmse);
    CHECK(r.rmse < 3.3e-4);
    CHECK(r.rmse > 3.3e-6);
    CHECK(r.n == nodes.size());
    CHECK(r.s == res.eval_points.size());
    CHECK(std::isfinite(r.fill_distance));
}

TEST_CASE("model evaluation contracts")
{
    const PointSet nodes = pentagon_nodes(1500);
    const ConvexDomain dom = shape_domain(Shape::pentagon);
    const PumModel model(nodes, dom, PumConfig{});
    for (std::size_t j = 0; j < model.fits().size(); ++j) {
        REQUIRE(static_cast<std::size_t>(model.fits()[j].coefficients.size()) == model.covering().nodes[j].size());
        REQUIRE(model.fits()[j].cond >= 1.0);
    }
    const PointSet probes = reduce_to_domain(halton(3000, 2, 5000), dom);
    const Evaluation ev = model.evaluate(probes);
    CHECK(ev.max_active_distance < 1.0);
    CHECK(ev.max_pu_deviation <= 1e-12);
    CHECK(ev.subdomain_touches > probes.size());

    const Evaluation at_nodes = model.evaluate(nodes);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        REQUIRE(std::abs(at_nodes.values[i] - nodes.values()[i]) <= 1e-6);
    }
}

TEST_CASE("constant data")
{
    // Without a polynomial term the local fits reproduce constants only at the nodes.
    PointSet nodes = halton_in_shape(Shape::triangle, 1500);
    nodes.set_values(std::vector<double>(nodes.size(), 2.5));
    const PumModel model(nodes, shape_domain(Shape::triangle), PumConfig{});
    const Evaluation at_nodes = model.evaluate(nodes);
    for (double v : at_nodes.values) REQUIRE(std::abs(v - 2.5) <= 1e-8);
    const PointSet probes = reduce_to_domain(grid_on_rect(shape_domain(Shape::triangle).rect, 900),
                                             shape_domain(Shape::triangle));
    const Evaluation off = model.evaluate(probes);
    double worst = 0.0;
    for (double v : off.values) worst = std::max(worst, std::abs(v - 2.5));
    CHECK(worst <= 1e-2 * 2.5);
}

TEST_CASE("serial and parallel paths agree bit for bit")
{
    const PointSet nodes = with_values(halton_in_shape(Shape::pyramid, 6000), TestFunction::f4);
    PumConfig cfg;
    cfg.s_R = 3375;
    cfg.execution = Execution::serial;
    const PumResult serial = pum_interpolate(nodes, cfg);
    for (int threads : {0, 2, 3, 8}) {
        cfg.execution = Execution::parallel;
        cfg.threads = threads;
        const PumResult par = pum_interpolate(nodes, cfg);
        REQUIRE(par.values == serial.values);
        CHECK(par.report.max_cond == serial.report.max_cond);
        CHECK(par.report.av_cond == serial.report.av_cond);
        CHECK(to_json(par.report, false) == to_json(serial.report, false));
    }
}

TEST_CASE("repeated runs are identical")
{
    const PointSet nodes = pentagon_nodes(3000);
    PumConfig cfg;
    cfg.s_R = 1600;
    const PumResult a = pum_interpolate(nodes, cfg, pentagon_options());
    const PumResult b = pum_interpolate(nodes, cfg, pentagon_options());
    CHECK(a.values == b.values);
    CHECK(to_json(a.report, false) == to_json(b.report, false));
}

TEST_CASE("uncovered points and evaluation outside every subdomain")
{
    const PointSet nodes = pentagon_nodes(1000);
    const PumModel model(nodes, shape_domain(Shape::pentagon), PumConfig{});
    PointSet far(2);
    far.push_back(Coords{0.5, 0.5, 0.0});
    far.push_back(Coords{5.0, 5.0, 0.0});
    CHECK(model.uncovered(far) == std::vector<std::size_t>{1});
    CHECK_THROWS_AS(model.evaluate(far), NoActiveSubdomain);
}

TEST_CASE("given domain must contain the data")
{
    const PointSet nodes = with_values(halton(100, 2), TestFunction::f1);
    InterpolateOptions opts;
    opts.domain = shape_domain(Shape::triangle);
    PumConfig cfg;
    cfg.s_R = 100;
    CHECK_THROWS_AS(pum_interpolate(nodes, cfg, opts), InvalidArgument);
    CHECK_THROWS_AS(pum_interpolate(halton(100, 2), cfg), InvalidArgument);
}

TEST_CASE("pentagon, largest reference level")
{
    // Reference RMSE 3.05e-7 at this raw count; factor-10 band.
    const PointSet nodes = pentagon_nodes(159994);
    PumConfig cfg;
    cfg.s_R = 1600;
    cfg.block_mode = BlockMode::paper;
    InterpolateOptions opts = pentagon_options();
    opts.fill_distance = false;
    const PumResult res = pum_interpolate(nodes, cfg, opts);
    CHECK(res.report.rmse <= 3.05e-6);
    CHECK(res.report.rmse >= 3.05e-8);
    CHECK(res.report.pu_max_deviation <= 1e-12);
}

TEST_CASE("pentagon, first reference level conditioning")
{
    const PointSet nodes = pentagon_nodes(622);
    PumConfig cfg;
    cfg.s_R = 1600;
    cfg.block_mode = BlockMode::paper;
    const PumResult res = pum_interpolate(nodes, cfg, pentagon_options());
    CHECK(res.report.max_cond >= 1.30e6);
    CHECK(res.report.max_cond <= 1.30e8);
}
