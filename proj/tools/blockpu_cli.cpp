#include "blockpu/errors.hpp"
#include "blockpu/io.hpp"
#include "blockpu/pum.hpp"
#include "blockpu/reconstruct.hpp"
#include "blockpu/searchbench.hpp"
#include "blockpu/separatrix.hpp"
#include "blockpu/shapes.hpp"
#include "blockpu/validation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace blockpu;

struct Common {
    std::string kernel = "wendland-c2";
    double epsilon = 0.5;
    std::string block_mode = "cover";
    std::size_t d_R = 0;
    int threads = 0;
    bool serial = false;
    bool omit_timings = false;
    std::string report;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--kernel", c.kernel, "wendland-c2 | wu-c4")->capture_default_str();
    cmd->add_option("--epsilon", c.epsilon, "kernel shape parameter")->capture_default_str();
    cmd->add_option("--block-mode", c.block_mode, "cover | paper")
        ->check(CLI::IsMember({"cover", "paper"}))
        ->capture_default_str();
    cmd->add_option("--d-R", c.d_R, "subdomain centres on R (0: automatic)");
    cmd->add_option("--threads", c.threads, "worker cap (0: OpenMP default)")->envname("PUM_THREADS");
    cmd->add_flag("--serial", c.serial, "run the serial reference loops");
    cmd->add_flag("--omit-timings", c.omit_timings, "leave wall-clock timings out of the report");
    cmd->add_option("--report", c.report, "report file (JSON); stdout if omitted");
}

PumConfig make_config(const Common& c)
{
    PumConfig cfg;
    cfg.kernel = Kernel::from_name(c.kernel, c.epsilon);
    cfg.block_mode = c.block_mode == "paper" ? BlockMode::paper : BlockMode::cover;
    cfg.d_R = c.d_R;
    cfg.execution = c.serial ? Execution::serial : Execution::parallel;
    cfg.threads = c.threads;
    return cfg;
}

// "40x40" -> 1600 with every axis equal; a bare integer is the total count.
std::size_t parse_grid_total(const std::string& spec, int dim)
{
    std::vector<std::size_t> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(tok, &used);
            if (used != tok.size() || v == 0) throw std::invalid_argument(tok);
            parts.push_back(v);
        } catch (const std::exception&) {
            throw InvalidArgument("bad grid spec '" + spec + "'");
        }
    }
    if (parts.size() == 1) return parts[0];
    if (parts.size() != static_cast<std::size_t>(dim)) {
        throw InvalidArgument("grid spec '" + spec + "' needs " + std::to_string(dim) + " factors");
    }
    std::size_t total = 1;
    for (std::size_t p : parts) {
        if (p != parts[0]) throw InvalidArgument("grid spec '" + spec + "' must use the same count on every axis");
        total *= p;
    }
    return total;
}

std::array<std::size_t, 3> parse_grid_counts(const std::string& spec)
{
    std::array<std::size_t, 3> counts{};
    std::stringstream ss(spec);
    std::string tok;
    std::size_t k = 0;
    while (std::getline(ss, tok, 'x')) {
        if (k == 3) throw InvalidArgument("bad grid spec '" + spec + "'");
        try {
            counts[k++] = std::stoul(tok);
        } catch (const std::exception&) {
            throw InvalidArgument("bad grid spec '" + spec + "'");
        }
    }
    if (k == 1) counts[1] = counts[2] = counts[0];
    else if (k != 3) throw InvalidArgument("bad grid spec '" + spec + "'");
    return counts;
}

void emit_text(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

struct InterpolateArgs {
    Common common;
    std::string points;
    std::string gen;
    std::size_t n = 0;
    std::string shape = "pentagon";
    std::string func;
    int dim = 0;
    std::string eval_grid;
    std::string eval_points;
    bool check_nodes = false;
    std::string out;
};

int cmd_interpolate(const InterpolateArgs& a)
{
    std::optional<TestFunction> func;
    if (!a.func.empty()) func = test_function_from_name(a.func);

    PointSet nodes;
    std::size_t n_raw = 0;
    std::optional<ConvexDomain> domain;
    if (!a.points.empty()) {
        const int dim = a.dim > 0 ? a.dim : (func ? test_function_dim(*func) : 2);
        nodes = read_points(std::filesystem::path(a.points), dim);
        n_raw = nodes.size();
    } else {
        if (a.gen != "halton") throw InvalidArgument("either --points FILE or --gen halton is required");
        if (a.n < 1) throw InvalidArgument("--n must be >= 1");
        const Shape shape = shape_from_name(a.shape);
        nodes = halton_in_shape(shape, a.n);
        n_raw = a.n;
        domain = shape_domain(shape);
    }
    if (func && test_function_dim(*func) != nodes.dim()) {
        throw InvalidArgument("function " + std::string(test_function_name(*func)) + " does not match dimension " +
                              std::to_string(nodes.dim()));
    }
    if (!nodes.has_values()) {
        if (!func) throw InvalidArgument("data sites carry no values and no --func was given");
        nodes.set_values(eval_test_function(*func, nodes));
    }

    PumConfig cfg = make_config(a.common);
    InterpolateOptions opts;
    opts.check_nodes = a.check_nodes;
    opts.domain = domain;
    if (func) opts.truth = [f = *func](std::span<const double> p) { return eval_test_function(f, p); };
    if (!a.eval_points.empty()) {
        opts.eval_points = read_points(std::filesystem::path(a.eval_points), nodes.dim());
    } else {
        const std::string spec = a.eval_grid.empty() ? (nodes.dim() == 2 ? "40x40" : "20x20x20") : a.eval_grid;
        cfg.s_R = parse_grid_total(spec, nodes.dim());
    }

    PumResult res = pum_interpolate(nodes, cfg, opts);
    res.report.n_raw = n_raw;
    if (!a.out.empty()) write_values(std::filesystem::path(a.out), res.eval_points, res.values);
    emit_text(a.common.report, to_json(res.report, !a.common.omit_timings));
    return 0;
}

struct ReconstructArgs {
    Common common;
    std::string cloud;
    std::string gen;
    std::size_t n = 2000;
    double step = 0.0;
    std::string grid = "30x30x30";
    std::string out;
};

int cmd_reconstruct(ReconstructArgs a)
{
    OrientedCloud cloud;
    if (!a.cloud.empty()) {
        const std::filesystem::path path(a.cloud);
        cloud = path.extension() == ".ply" ? read_ply_cloud(path) : read_oriented_cloud(path);
    } else {
        if (a.gen != "sphere") throw InvalidArgument("either --cloud FILE or --gen sphere is required");
        cloud = sphere_cloud(a.n);
    }
    cloud.step = a.step > 0.0 ? a.step : default_step(cloud.points);
    if (a.common.epsilon <= 0.0) {
        Common c = a.common;
        c.epsilon = 1.0;
        a.common.epsilon = support_covering_epsilon(cloud, make_config(c));
    }
    const PumConfig cfg = make_config(a.common);
    const ReconstructResult res = reconstruct(cloud, cfg, parse_grid_counts(a.grid));
    if (!a.out.empty()) write_grid(std::filesystem::path(a.out), res.grid);
    emit_text(a.common.report, to_json(res.report, !a.common.omit_timings));
    return 0;
}

struct BenchmarkArgs {
    std::vector<std::size_t> sizes{10000, 40000, 160000, 640000};
    int dim = 2;
    std::string block_mode = "cover";
    std::size_t brute_sample = 1000;
    int repeats = 3;
    std::string report;
};

int cmd_benchmark(const BenchmarkArgs& a)
{
    SearchBenchOptions opts;
    opts.dim = a.dim;
    opts.mode = a.block_mode == "paper" ? BlockMode::paper : BlockMode::cover;
    opts.brute_sample = a.brute_sample;
    opts.repeats = a.repeats;
    if (a.dim < 2 || a.dim > 3) throw InvalidArgument("--dim must be 2 or 3");
    const auto rows = bench_search_ladder(a.sizes, opts);
    std::cout << format_search_table(rows);
    if (!a.report.empty()) emit_text(a.report, search_rows_to_json(rows));
    return 0;
}

struct SeparatrixArgs {
    Common common;
    std::size_t pairs = 300;
    std::size_t lattice = 10;
    double tol = 1e-3;
    int height_axis = 1;
    std::string eval_grid = "40x40";
    std::string samples_out;
    std::string out;
};

int cmd_separatrix(SeparatrixArgs a)
{
    const CompetitionParams params;
    SampleOptions so;
    so.lattice = a.lattice;
    so.tol = a.tol;
    so.execution = a.common.serial ? Execution::serial : Execution::parallel;
    so.threads = a.common.threads;
    const PointSet samples = sample_separatrix(params, a.pairs, so);
    if (!a.samples_out.empty()) write_points(std::filesystem::path(a.samples_out), samples);

    const PointSet field = separatrix_height_field(samples, a.height_axis);
    PumConfig cfg = make_config(a.common);
    cfg.s_R = parse_grid_total(a.eval_grid, 2);
    const PumResult res = pum_interpolate(field, cfg);
    if (!a.out.empty()) write_values(std::filesystem::path(a.out), res.eval_points, res.values);
    RunReport rep = res.report;
    rep.n_raw = samples.size();
    emit_text(a.common.report, to_json(rep, !a.common.omit_timings));
    return 0;
}

struct GenArgs {
    std::string shape = "pentagon";
    std::size_t n = 0;
    std::string func;
    std::string out;
};

int cmd_gen_points(const GenArgs& a)
{
    const Shape shape = shape_from_name(a.shape);
    PointSet pts = halton_in_shape(shape, a.n);
    if (!a.func.empty()) {
        const TestFunction f = test_function_from_name(a.func);
        if (test_function_dim(f) != pts.dim()) throw InvalidArgument("function does not match the shape dimension");
        pts.set_values(eval_test_function(f, pts));
    }
    if (a.out.empty()) {
        write_points(std::cout, pts);
    } else {
        write_points(std::filesystem::path(a.out), pts);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Partition-of-unity RBF interpolation with block-based range search"};
    app.require_subcommand(1);

    InterpolateArgs ia;
    auto* interp = app.add_subcommand("interpolate", "interpolate scattered data and report errors");
    add_common(interp, ia.common);
    interp->add_option("--points", ia.points, "point file: x1..xM [f]");
    interp->add_option("--gen", ia.gen, "generator (halton)")->check(CLI::IsMember({"halton"}));
    interp->add_option("--n", ia.n, "raw generator count before reduction");
    interp->add_option("--shape", ia.shape, "pentagon|triangle|cylinder|pyramid|square|cube")->capture_default_str();
    interp->add_option("--func", ia.func, "f1|f2|f3|f4");
    interp->add_option("--dim", ia.dim, "dimension of --points (default from --func, else 2)");
    interp->add_option("--eval-grid", ia.eval_grid, "e.g. 40x40 or 20x20x20");
    interp->add_option("--eval-points", ia.eval_points, "explicit evaluation point file");
    interp->add_flag("--check-nodes", ia.check_nodes, "report the residual at the data sites");
    interp->add_option("--out", ia.out, "predicted values file");

    ReconstructArgs ra;
    ra.common.kernel = "wu-c4";
    ra.common.epsilon = 0.0;
    auto* recon = app.add_subcommand("reconstruct", "implicit surface from an oriented point cloud");
    add_common(recon, ra.common);
    recon->get_option("--epsilon")->description("kernel shape parameter (0: support spans a subdomain)");
    recon->add_option("--cloud", ra.cloud, "x y z nx ny nz text file or ASCII PLY");
    recon->add_option("--gen", ra.gen, "generator (sphere)")->check(CLI::IsMember({"sphere"}));
    recon->add_option("--n", ra.n, "generated cloud size")->capture_default_str();
    recon->add_option("--step", ra.step, "off-surface step (default 1% of the bounding cube edge)");
    recon->add_option("--grid", ra.grid, "sampling grid, e.g. 30x30x30")->capture_default_str();
    recon->add_option("--out", ra.out, "grid file");

    BenchmarkArgs ba;
    auto* bench = app.add_subcommand("benchmark", "block range search vs brute force over a size ladder");
    bench->add_option("--sizes", ba.sizes, "comma separated N ladder")->delimiter(',')->capture_default_str();
    bench->add_option("--dim", ba.dim, "2 or 3")->capture_default_str();
    bench->add_option("--block-mode", ba.block_mode)->check(CLI::IsMember({"cover", "paper"}))->capture_default_str();
    bench->add_option("--brute-sample", ba.brute_sample, "queries checked against brute force")->capture_default_str();
    bench->add_option("--repeats", ba.repeats, "timing repeats (minimum is kept)")->capture_default_str();
    bench->add_option("--report", ba.report, "JSON rows");

    SeparatrixArgs sa;
    sa.common.epsilon = 0.1;
    auto* sep = app.add_subcommand("separatrix-demo", "sample and interpolate the competition-model separatrix");
    add_common(sep, sa.common);
    sep->add_option("--pairs", sa.pairs, "bisection pairs")->capture_default_str();
    sep->add_option("--lattice", sa.lattice, "initial-condition lattice per axis")->capture_default_str();
    sep->add_option("--tol", sa.tol, "bisection bracket length")->capture_default_str();
    sep->add_option("--height-axis", sa.height_axis, "coordinate used as the surface height (0..2)")
        ->capture_default_str();
    sep->add_option("--eval-grid", sa.eval_grid)->capture_default_str();
    sep->add_option("--samples-out", sa.samples_out, "separatrix points file");
    sep->add_option("--out", sa.out, "interpolated surface values file");

    GenArgs ga;
    auto* gen = app.add_subcommand("gen-points", "Halton points reduced to a built-in shape");
    gen->add_option("--shape", ga.shape)->capture_default_str();
    gen->add_option("--n", ga.n, "raw count before reduction")->required();
    gen->add_option("--func", ga.func, "attach f1..f4 values");
    gen->add_option("--out", ga.out, "point file; stdout if omitted");

    CLI11_PARSE(app, argc, argv);

    try {
        if (interp->parsed()) return cmd_interpolate(ia);
        if (recon->parsed()) return cmd_reconstruct(ra);
        if (bench->parsed()) return cmd_benchmark(ba);
        if (sep->parsed()) return cmd_separatrix(sa);
        if (gen->parsed()) return cmd_gen_points(ga);
    } catch (const IoError& e) {
        std::cerr << "blockpu: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "blockpu: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
