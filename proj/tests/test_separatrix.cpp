#include "blockpu/errors.hpp"
#include "blockpu/separatrix.hpp"

#include <doctest.h>

#include <cmath>

using namespace blockpu;

namespace {

double dist(const Coords& a, const Coords& b)
{
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

} // namespace

TEST_CASE("right-hand side")
{
    const CompetitionParams k;
    // Hand substitution: (0 - 1 - 2, 0.25 - 0.3 - 1, 0 - 3 - 2).
    const Coords d = rhs(Coords{1.0, 1.0, 1.0}, k);
    CHECK(d[0] == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK(d[1] == doctest::Approx(-1.05).epsilon(1e-15));
    CHECK(d[2] == doctest::Approx(-5.0).epsilon(1e-15));
    const Coords h = rhs(Coords{0.5, 0.25, 0.125}, k);
    CHECK(h[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(h[1] == doctest::Approx(0.040625).epsilon(1e-14));
    CHECK(h[2] == doctest::Approx(-0.03125).epsilon(1e-14));
}

TEST_CASE("equilibria are fixed points")
{
    const CompetitionParams k;
    for (const Coords& e : {Coords{0.0, k.v, 0.0}, Coords{0.0, 0.0, k.w}, Coords{0.0, 0.0, 0.0}, Coords{k.u, 0.0, 0.0}}) {
        const Coords d = rhs(e, k);
        for (double x : d) CHECK(std::abs(x) <= 1e-14);
    }
}

TEST_CASE("parameter validation")
{
    CompetitionParams k;
    CHECK_NOTHROW(k.validate());
    k.c = -0.1;
    CHECK_THROWS_AS(k.validate(), InvalidArgument);
    k = CompetitionParams{};
    k.gamma = 0.0;
    CHECK_THROWS_AS(k.validate(), InvalidArgument);
}

TEST_CASE("classification on the invariant axes")
{
    const CompetitionParams k;
    CHECK(classify(Coords{0.0, 0.1, 0.0}, k) == Basin::E2);
    CHECK(classify(Coords{0.0, 0.0, 0.1}, k) == Basin::E3);
    CHECK(classify(Coords{0.0, k.v + 0.1, 0.0}, k) == Basin::E2);
    CHECK(classify(Coords{0.0, k.v - 0.1, 0.0}, k) == Basin::E2);
    CHECK(classify(Coords{0.0, 0.0, k.w + 0.1}, k) == Basin::E3);
    CHECK(classify(Coords{0.0, 0.0, k.w - 0.1}, k) == Basin::E3);
    CHECK(classify(Coords{0.05, k.v + 0.05, 0.05}, k) == Basin::E2);
    CHECK(classify(Coords{0.05, 0.05, k.w + 0.05}, k) == Basin::E3);

    const Basin mid = classify(Coords{0.5, 0.5, 0.5}, k);
    CHECK(mid != Basin::Unresolved);
    CHECK(classify(Coords{0.5, 0.5, 0.5}, k) == mid);

    IntegratorOptions short_run;
    short_run.t_max = 0.01;
    CHECK(classify(Coords{0.0, 0.1, 0.0}, k, short_run) == Basin::Unresolved);
    CHECK(std::string(basin_name(Basin::E3)) == "E3");
}

TEST_CASE("bisection between the axes")
{
    const CompetitionParams k;
    const Coords a{0.0, 0.1, 0.0};
    const Coords b{0.0, 0.0, 0.1};
    const BisectionResult r = bisect_separatrix(a, b, k, 1e-6);
    CHECK(r.basin_a == Basin::E2);
    CHECK(r.basin_b == Basin::E3);
    CHECK(dist(r.side_a, r.side_b) <= 1e-6);
    CHECK(classify(r.side_a, k) == Basin::E2);
    CHECK(classify(r.side_b, k) == Basin::E3);
    // The point lies on the segment.
    CHECK(std::abs(r.point[0]) <= 1e-15);
    CHECK(r.point[1] + r.point[2] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(dist(a, r.point) + dist(r.point, b) == doctest::Approx(dist(a, b)).epsilon(1e-12));
}

TEST_CASE("bisection edge cases")
{
    const CompetitionParams k;
    const Coords a{0.0, 0.1, 0.0};
    const Coords b{0.0, 0.0, 0.1};
    const BisectionResult one = bisect_separatrix(a, b, k, dist(a, b));
    CHECK(one.steps == 0);
    CHECK(one.point[1] == doctest::Approx(0.05));
    CHECK(one.point[2] == doctest::Approx(0.05));

    const BisectionResult step = bisect_separatrix(a, b, k, 0.75 * dist(a, b));
    CHECK(step.steps == 1);

    CHECK_THROWS_AS(bisect_separatrix(a, Coords{0.0, 0.3, 0.0}, k, 1e-3), SameBasin);
    CHECK_THROWS_AS(bisect_separatrix(a, b, k, 0.0), InvalidArgument);
}

TEST_CASE("sampling the separatrix")
{
    const CompetitionParams k;
    SampleOptions opts;
    opts.lattice = 6;
    opts.execution = Execution::serial;
    const PointSet serial = sample_separatrix(k, 1000, opts);
    CHECK(serial.size() > 10);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        for (int m = 0; m < 3; ++m) {
            CHECK(serial.coord(i, m) >= 0.0);
            CHECK(serial.coord(i, m) <= k.gamma);
        }
    }
    opts.execution = Execution::parallel;
    opts.threads = 3;
    const PointSet parallel = sample_separatrix(k, 1000, opts);
    CHECK(parallel.coords() == serial.coords());

    const PointSet few = sample_separatrix(k, 5, opts);
    REQUIRE(few.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        for (int m = 0; m < 3; ++m) CHECK(few.coord(i, m) == serial.coord(i, m));
    }
    CHECK_THROWS_AS(sample_separatrix(k, 0, opts), InvalidArgument);
}

TEST_CASE("height field")
{
    PointSet s(3);
    s.push_back(Coords{0.1, 0.2, 0.3});
    s.push_back(Coords{0.4, 0.5, 0.6});
    const PointSet h = separatrix_height_field(s, 1);
    REQUIRE(h.dim() == 2);
    REQUIRE(h.size() == 2);
    CHECK(h.coord(0, 0) == 0.1);
    CHECK(h.coord(0, 1) == 0.3);
    CHECK(h.values()[1] == 0.5);
    CHECK_THROWS_AS(separatrix_height_field(s, 3), InvalidArgument);
}
