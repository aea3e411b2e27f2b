#include "blockpu/errors.hpp"
#include "blockpu/geometry.hpp"
#include "blockpu/shapes.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace blockpu;

namespace {

PointSet make2(std::initializer_list<std::array<double, 2>> pts)
{
    PointSet out(2);
    for (const auto& p : pts) out.push_back(std::span<const double>(p.data(), 2));
    return out;
}

PointSet unit_cube_corners()
{
    PointSet out(3);
    for (double x : {0.0, 1.0}) {
        for (double y : {0.0, 1.0}) {
            for (double z : {0.0, 1.0}) out.push_back(Coords{x, y, z});
        }
    }
    return out;
}

PointSet random_points(std::size_t n, int dim, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PointSet out(dim);
    for (std::size_t i = 0; i < n; ++i) out.push_back(Coords{u(rng), u(rng), u(rng)});
    return out;
}

// Brute-force nearest-node distance maximised over probes.
double fill_oracle(const PointSet& nodes, const PointSet& probes)
{
    double h = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        double best = INFINITY;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            double s = 0.0;
            for (int m = 0; m < nodes.dim(); ++m) s += (probes.coord(i, m) - nodes.coord(j, m)) * (probes.coord(i, m) - nodes.coord(j, m));
            best = std::min(best, std::sqrt(s));
        }
        h = std::max(h, best);
    }
    return h;
}

} // namespace

TEST_CASE("hull of the unit square")
{
    const ConvexDomain dom = convex_hull(make2({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}}));
    CHECK(dom.measure == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dom.vertices.size() == 4);
    CHECK(dom.facets.size() == 4);
    CHECK(dom.rect.lo[0] == 0.0);
    CHECK(dom.rect.hi[1] == 1.0);
    CHECK(dom.box.origin[0] == 0.0);
    CHECK(dom.box.origin[1] == 0.0);
    CHECK(dom.box.edge == 1.0);
}

TEST_CASE("hull of the unit cube")
{
    const ConvexDomain dom = convex_hull(unit_cube_corners());
    CHECK(dom.measure == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dom.vertices.size() == 8);
    CHECK(dom.box.edge == 1.0);
}

TEST_CASE("regular pentagon inscribed in the unit circle")
{
    PointSet p(2);
    for (int k = 0; k < 5; ++k) {
        const double t = std::numbers::pi / 2 + 2 * std::numbers::pi * k / 5;
        p.push_back(Coords{std::cos(t), std::sin(t), 0.0});
    }
    const ConvexDomain dom = convex_hull(p);
    // Shoelace area from an arbitrary-precision script.
    CHECK(dom.measure == doctest::Approx(2.377641290737884).epsilon(1e-14));
    CHECK_FALSE(contains(dom, Coords{0.99, 0.99, 0.0}));
    CHECK(contains(dom, Coords{0.0, 0.0, 0.0}));
}

TEST_CASE("shipped shapes")
{
    CHECK(shape_domain(Shape::pentagon).measure == doctest::Approx(0.5944103226844710).epsilon(1e-13));
    CHECK(shape_domain(Shape::triangle).measure == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(shape_domain(Shape::square).measure == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(shape_domain(Shape::cube).measure == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(shape_domain(Shape::pyramid).measure == doctest::Approx(0.512 / 3).epsilon(1e-13));
    // 64-gon prism: 32 r^2 sin(2 pi / 64) * height.
    CHECK(shape_domain(Shape::cylinder).measure == doctest::Approx(0.4516629826386153).epsilon(1e-12));
    CHECK(shape_from_name("cylinder") == Shape::cylinder);
    CHECK_THROWS_AS(shape_from_name("torus"), InvalidArgument);
}

TEST_CASE("degenerate hulls")
{
    CHECK_THROWS_AS(convex_hull(make2({{0, 0}, {1, 1}, {2, 2}})), DegenerateInput);
    CHECK_THROWS_AS(convex_hull(make2({{0, 0}, {0, 0}, {0, 0}})), DegenerateInput);
    PointSet flat(3);
    for (int i = 0; i < 10; ++i) flat.push_back(Coords{i * 0.1, (i * 7 % 10) * 0.1, 0.25});
    CHECK_THROWS_AS(convex_hull(flat), DegenerateInput);
}

TEST_CASE("contains treats the boundary as inside")
{
    const ConvexDomain sq = shape_domain(Shape::square);
    CHECK(contains(sq, Coords{0.5, 0.5, 0.0}));
    CHECK(contains(sq, Coords{1.0, 0.5, 0.0}));
    CHECK_FALSE(contains(sq, Coords{1.0 + 1e-9, 0.5, 0.0}));
}

TEST_CASE("hull properties on random clouds")
{
    for (int dim : {2, 3}) {
        for (unsigned seed = 1; seed <= 5; ++seed) {
            const PointSet pts = random_points(300, dim, seed);
            const ConvexDomain dom = convex_hull(pts);
            for (std::size_t i = 0; i < pts.size(); ++i) REQUIRE(contains(dom, pts[i]));

            std::vector<std::size_t> perm(pts.size());
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), std::mt19937(seed));
            const ConvexDomain again = convex_hull(pts.subset(perm));
            CHECK(again.measure == doctest::Approx(dom.measure).epsilon(1e-12));

            for (const Facet& f : dom.facets) {
                double len = 0.0;
                for (int m = 0; m < dim; ++m) len += f.normal[m] * f.normal[m];
                CHECK(std::sqrt(len) == doctest::Approx(1.0).epsilon(1e-12));
            }
            for (int m = 0; m < dim; ++m) CHECK(dom.box.edge >= dom.rect.extent(m));
        }
    }
}

TEST_CASE("3D hull volume against a Monte Carlo count")
{
    const PointSet pts = random_points(60, 3, 42);
    const ConvexDomain dom = convex_hull(pts);
    const PointSet probes = halton(200000, 3);
    std::size_t inside = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) inside += contains(dom, probes[i]) ? 1 : 0;
    CHECK(static_cast<double>(inside) / 200000.0 == doctest::Approx(dom.measure).epsilon(0.01));
}

TEST_CASE("halton")
{
    const PointSet one = halton(1, 2);
    REQUIRE(one.size() == 1);
    CHECK(one.coord(0, 0) == 0.5);
    CHECK(one.coord(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    CHECK(halton(0, 2).empty());
    CHECK(radical_inverse(3, 2) == 0.75);
    CHECK(halton(3, 3).coord(2, 0) == 0.75);
    CHECK(halton(1, 3).coord(0, 2) == doctest::Approx(0.2).epsilon(1e-16));
    const PointSet skipped = halton(2, 2, 2);
    CHECK(skipped.coord(0, 0) == 0.75);

    const PointSet a = halton(100, 3);
    const PointSet b = halton(101, 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (int m = 0; m < 3; ++m) REQUIRE(a.coord(i, m) == b.coord(i, m));
    }
}

TEST_CASE("grid_on_rect")
{
    const AxisBox unit{2, {0, 0, 0}, {1, 1, 0}};
    const PointSet g = grid_on_rect(unit, 4);
    REQUIRE(g.size() == 4);
    const double expect[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(g.coord(i, 0) == expect[i][0]);
        CHECK(g.coord(i, 1) == expect[i][1]);
    }
    CHECK(grid_on_rect(unit, 1600).size() == 1600);
    const AxisBox cube{3, {0, 0, 0}, {1, 1, 1}};
    CHECK(grid_on_rect(cube, 8000).size() == 8000);
    CHECK(grid_nodes_per_axis(8000, 3) == 20);
    const PointSet mid = grid_on_rect(unit, 1);
    CHECK(mid.coord(0, 0) == 0.5);
}

TEST_CASE("reduce_to_domain")
{
    const AxisBox unit{2, {0, 0, 0}, {1, 1, 0}};
    const PointSet grid = grid_on_rect(unit, 121);
    const ConvexDomain lower = convex_hull(make2({{0, 0}, {1, 0}, {1, 1}}));
    const PointSet kept = reduce_to_domain(grid, lower);
    std::size_t expect = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) expect += grid.coord(i, 1) <= grid.coord(i, 0) ? 1 : 0;
    CHECK(kept.size() == expect);
    for (std::size_t i = 0; i < kept.size(); ++i) CHECK(kept.coord(i, 1) <= kept.coord(i, 0));

    const ConvexDomain sq = shape_domain(Shape::square);
    CHECK(reduce_to_domain(grid, sq).size() == grid.size());
    const PointSet twice = reduce_to_domain(kept, lower);
    CHECK(twice.coords() == kept.coords());

    const PointSet far = make2({{5, 5}, {6, 6}});
    CHECK_THROWS_AS(reduce_to_domain(far, sq), EmptyReduction);
}

TEST_CASE("fill distance")
{
    const PointSet corners = make2({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    const AxisBox unit{2, {0, 0, 0}, {1, 1, 0}};
    const PointSet probes = grid_on_rect(unit, 101 * 101);
    CHECK(fill_distance(corners, probes) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
    CHECK(fill_distance(probes, probes) == 0.0);

    const PointSet nodes = halton(500, 2);
    const PointSet some = halton(250, 2);
    const PointSet p = grid_on_rect(unit, 900);
    CHECK(fill_distance(nodes, p) == fill_oracle(nodes, p));
    CHECK(fill_distance(nodes, p) <= fill_distance(some, p));
}
