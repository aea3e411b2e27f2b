#include "blockpu/blockpart.hpp"
#include "blockpu/pum.hpp"
#include "blockpu/searchbench.hpp"
#include "blockpu/shapes.hpp"
#include "blockpu/validation.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace blockpu;

PointSet pentagon_data(std::size_t raw)
{
    PointSet pts = halton_in_shape(Shape::pentagon, raw);
    pts.set_values(eval_test_function(TestFunction::f1, pts));
    return pts;
}

// Full pipeline, serial reference loops vs OpenMP loops.
void run_pipeline(benchmark::State& state, Execution exec)
{
    const PointSet nodes = pentagon_data(static_cast<std::size_t>(state.range(0)));
    PumConfig cfg;
    cfg.s_R = 1600;
    cfg.execution = exec;
    InterpolateOptions opts;
    opts.domain = shape_domain(Shape::pentagon);
    opts.fill_distance = false;
    for (auto _ : state) {
        PumResult r = pum_interpolate(nodes, cfg, opts);
        benchmark::DoNotOptimize(r.values.data());
    }
    state.counters["N"] = static_cast<double>(nodes.size());
}

void BM_PipelineSerial(benchmark::State& state) { run_pipeline(state, Execution::serial); }
void BM_PipelineParallel(benchmark::State& state) { run_pipeline(state, Execution::parallel); }

struct SearchFixture {
    PointSet pts;
    PointSet centers;
    double radius;
    BoundingCube box;

    explicit SearchFixture(std::size_t n) : pts(halton(n, 2)), centers(2)
    {
        const AxisBox unit{2, {0.0, 0.0, 0.0}, {1.0, 1.0, 0.0}};
        box = bounding_cube(unit);
        const std::size_t d_R = suggest_d_R(n, 1.0, 1.0, 2);
        radius = subdomain_radius(1.0, d_R, 2);
        centers = grid_on_rect(unit, d_R);
    }
};

void BM_BlockBuild(benchmark::State& state)
{
    const SearchFixture f(static_cast<std::size_t>(state.range(0)));
    const std::size_t q = blocks_per_side(f.box.edge, f.radius, BlockMode::cover);
    for (auto _ : state) {
        BlockStructure s(f.pts, f.box, q);
        benchmark::DoNotOptimize(s.block_count());
    }
}

void BM_BlockRangeSearch(benchmark::State& state)
{
    const SearchFixture f(static_cast<std::size_t>(state.range(0)));
    const BlockStructure s(f.pts, f.box, blocks_per_side(f.box.edge, f.radius, BlockMode::cover));
    std::vector<Neighbor> out;
    std::size_t j = 0;
    for (auto _ : state) {
        s.range_search(f.centers[j], f.radius, out);
        benchmark::DoNotOptimize(out.data());
        j = (j + 1) % f.centers.size();
    }
}

void BM_BruteRangeSearch(benchmark::State& state)
{
    const SearchFixture f(static_cast<std::size_t>(state.range(0)));
    std::size_t j = 0;
    for (auto _ : state) {
        auto out = brute_range_search(f.pts, f.centers[j], f.radius);
        benchmark::DoNotOptimize(out.data());
        j = (j + 1) % f.centers.size();
    }
}

} // namespace

BENCHMARK(BM_PipelineSerial)->Arg(2499)->Arg(9999)->Arg(39991)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PipelineParallel)->Arg(2499)->Arg(9999)->Arg(39991)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockBuild)->RangeMultiplier(4)->Range(10000, 640000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BlockRangeSearch)->RangeMultiplier(4)->Range(10000, 640000);
BENCHMARK(BM_BruteRangeSearch)->RangeMultiplier(4)->Range(10000, 640000);

BENCHMARK_MAIN();
