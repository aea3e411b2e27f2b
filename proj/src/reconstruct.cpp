#include "blockpu/reconstruct.hpp"

#include "blockpu/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace blockpu {

double default_step(const PointSet& points)
{
    return 0.01 * bounding_cube(bounding_rect(points)).edge;
}

OrientedCloud sphere_cloud(std::size_t n, double radius, Coords center, double step)
{
    if (n < 4) throw InvalidArgument("sphere cloud needs at least 4 points");
    if (!(radius > 0.0)) throw InvalidArgument("sphere radius must be positive");
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    OrientedCloud cloud;
    cloud.points.reserve(n);
    cloud.normals.reserve(n);
    cloud.step = step;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double t = golden * static_cast<double>(i);
        const Coords u{rho * std::cos(t), rho * std::sin(t), z};
        cloud.points.push_back(Coords{center[0] + radius * u[0], center[1] + radius * u[1], center[2] + radius * u[2]});
        cloud.normals.push_back(u);
    }
    return cloud;
}

PointSet augment(const OrientedCloud& cloud)
{
    if (cloud.points.dim() != 3) throw InvalidArgument("oriented clouds are three-dimensional");
    if (cloud.normals.size() != cloud.points.size()) throw LengthMismatch("normals vs points");
    if (!(cloud.step > 0.0)) throw InvalidArgument("off-surface step must be positive");

    std::vector<std::size_t> oriented;
    std::vector<Coords> unit;
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const Coords& n = cloud.normals[i];
        const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
        if (len > 0.0) {
            oriented.push_back(i);
            unit.push_back({n[0] / len, n[1] / len, n[2] / len});
        }
    }

    PointSet out(3);
    out.reserve(cloud.points.size() + 2 * oriented.size());
    for (std::size_t i = 0; i < cloud.points.size(); ++i) out.push_back(cloud.points[i], 0.0);
    for (const double sign : {1.0, -1.0}) {
        for (std::size_t k = 0; k < oriented.size(); ++k) {
            const auto p = cloud.points[oriented[k]];
            const Coords q{p[0] + sign * cloud.step * unit[k][0], p[1] + sign * cloud.step * unit[k][1],
                           p[2] + sign * cloud.step * unit[k][2]};
            out.push_back(q, sign);
        }
    }
    return out;
}

Coords ValueGrid::node(std::size_t ix, std::size_t iy, std::size_t iz) const noexcept
{
    const std::array<std::size_t, 3> idx{ix, iy, iz};
    Coords p{};
    for (int m = 0; m < 3; ++m) {
        const std::size_t n = counts[m];
        if (n <= 1) {
            p[m] = 0.5 * (lo[m] + hi[m]);
        } else if (idx[m] + 1 == n) {
            p[m] = hi[m];
        } else {
            p[m] = lo[m] + (hi[m] - lo[m]) * static_cast<double>(idx[m]) / static_cast<double>(n - 1);
        }
    }
    return p;
}

double support_covering_epsilon(const OrientedCloud& cloud, const PumConfig& cfg)
{
    const PointSet augmented = augment(cloud);
    const ConvexDomain dom = convex_hull(augmented);
    double delta = 0.0;
    if (cfg.delta_override) {
        delta = *cfg.delta_override;
    } else {
        const std::size_t d_R = cfg.d_R > 0 ? cfg.d_R : suggest_d_R(augmented.size(), dom.measure, dom.box.edge, 3);
        delta = subdomain_radius(dom.box.edge, d_R, 3);
    }
    return 1.0 / (2.0 * delta);
}

PumModel fit_implicit(const OrientedCloud& cloud, const PumConfig& cfg)
{
    PointSet augmented = augment(cloud);
    ConvexDomain dom = convex_hull(augmented);
    return PumModel(std::move(augmented), std::move(dom), cfg);
}

ValueGrid sample_grid(const PumModel& model, std::array<std::size_t, 3> counts, double* pu_deviation)
{
    for (std::size_t c : counts) {
        if (c < 1) throw InvalidArgument("grid counts must be >= 1");
    }
    ValueGrid grid;
    grid.counts = counts;
    grid.lo = model.domain().rect.lo;
    grid.hi = model.domain().rect.hi;
    const std::size_t total = counts[0] * counts[1] * counts[2];
    grid.values.assign(total, std::numeric_limits<double>::quiet_NaN());

    PointSet nodes(3);
    nodes.reserve(total);
    for (std::size_t iz = 0; iz < counts[2]; ++iz) {
        for (std::size_t iy = 0; iy < counts[1]; ++iy) {
            for (std::size_t ix = 0; ix < counts[0]; ++ix) nodes.push_back(grid.node(ix, iy, iz));
        }
    }
    const auto inside = indices_in_domain(nodes, model.domain());
    const PointSet candidates = nodes.subset(inside);
    const auto missing = model.uncovered(candidates);

    std::vector<std::size_t> keep;
    keep.reserve(inside.size());
    std::size_t next_missing = 0;
    for (std::size_t k = 0; k < inside.size(); ++k) {
        if (next_missing < missing.size() && missing[next_missing] == k) {
            ++next_missing;
            continue;
        }
        keep.push_back(k);
    }
    const PointSet covered = candidates.subset(keep);
    const Evaluation ev = model.evaluate(covered);
    for (std::size_t k = 0; k < keep.size(); ++k) grid.values[inside[keep[k]]] = ev.values[k];
    if (pu_deviation) *pu_deviation = ev.max_pu_deviation;
    return grid;
}

ReconstructResult reconstruct(const OrientedCloud& cloud, const PumConfig& cfg, std::array<std::size_t, 3> counts)
{
    const auto t0 = std::chrono::steady_clock::now();
    const PumModel model = fit_implicit(cloud, cfg);
    double pu_deviation = 0.0;
    ReconstructResult result{sample_grid(model, counts, &pu_deviation), {}};

    RunReport& rep = result.report;
    const Covering& cov = model.covering();
    rep.n = model.nodes().size();
    rep.n_raw = cloud.points.size();
    rep.d = cov.size();
    rep.d_R = cov.d_R;
    rep.q = cov.q;
    rep.pruned = cov.pruned;
    rep.delta = cov.radius;
    rep.kernel = cfg.kernel.name();
    rep.epsilon = cfg.kernel.epsilon();
    rep.block_mode = cfg.block_mode == BlockMode::cover ? "cover" : "paper";
    rep.max_cond = model.max_cond();
    rep.av_cond = model.av_cond();
    rep.pu_max_deviation = pu_deviation;
    std::size_t s = 0;
    for (double v : result.grid.values) s += std::isfinite(v) ? 1 : 0;
    rep.s = s;
    rep.mae = std::numeric_limits<double>::quiet_NaN();
    rep.rmse = std::numeric_limits<double>::quiet_NaN();
    rep.fill_distance = std::numeric_limits<double>::quiet_NaN();
    rep.t_structure_s = cov.t_structure_s;
    rep.t_search_s = cov.t_search_s;
    rep.t_solve_s = model.t_solve_s();
    rep.t_total_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

OrientedCloud read_oriented_cloud(std::istream& in)
{
    OrientedCloud cloud;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        for (char& c : line) {
            if (c == ',') c = ' ';
        }
        std::istringstream row(line);
        Coords p{};
        Coords n{};
        if (!(row >> p[0] >> p[1] >> p[2] >> n[0] >> n[1] >> n[2])) {
            throw IoError("line " + std::to_string(line_no) + ": expected x y z nx ny nz");
        }
        cloud.points.push_back(p);
        cloud.normals.push_back(n);
    }
    return cloud;
}

OrientedCloud read_oriented_cloud(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return read_oriented_cloud(in);
}

OrientedCloud read_ply_cloud(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("ply", 0) != 0) throw IoError("not a PLY file");

    std::size_t vertices = 0;
    bool in_vertex = false;
    std::vector<std::string> props;
    while (std::getline(in, line)) {
        std::istringstream h(line);
        std::string key;
        h >> key;
        if (key == "format") {
            std::string fmt;
            h >> fmt;
            if (fmt != "ascii") throw IoError("only ASCII PLY is supported");
        } else if (key == "element") {
            std::string name;
            h >> name;
            in_vertex = name == "vertex";
            if (in_vertex) h >> vertices;
        } else if (key == "property" && in_vertex) {
            std::string type;
            std::string name;
            h >> type;
            if (type == "list") throw IoError("list properties on vertices are not supported");
            h >> name;
            props.push_back(name);
        } else if (key == "end_header") {
            break;
        }
    }
    auto column = [&](const char* name) -> std::size_t {
        for (std::size_t i = 0; i < props.size(); ++i) {
            if (props[i] == name) return i;
        }
        throw IoError(std::string("PLY vertex property '") + name + "' missing (normals are required)");
    };
    const std::array<std::size_t, 6> cols{column("x"), column("y"), column("z"),
                                          column("nx"), column("ny"), column("nz")};

    OrientedCloud cloud;
    cloud.points.reserve(vertices);
    std::vector<double> row(props.size());
    for (std::size_t v = 0; v < vertices; ++v) {
        for (double& x : row) {
            if (!(in >> x)) throw IoError("truncated PLY vertex list");
        }
        cloud.points.push_back(Coords{row[cols[0]], row[cols[1]], row[cols[2]]});
        cloud.normals.push_back({row[cols[3]], row[cols[4]], row[cols[5]]});
    }
    return cloud;
}

void write_grid(std::ostream& out, const ValueGrid& grid)
{
    char buf[64];
    out << grid.counts[0] << ' ' << grid.counts[1] << ' ' << grid.counts[2];
    for (int m = 0; m < 3; ++m) {
        std::snprintf(buf, sizeof buf, " %.17g %.17g", grid.lo[m], grid.hi[m]);
        out << buf;
    }
    out << '\n';
    for (double v : grid.values) {
        if (std::isnan(v)) {
            out << "nan\n";
        } else {
            std::snprintf(buf, sizeof buf, "%.17g\n", v);
            out << buf;
        }
    }
}

void write_grid(const std::filesystem::path& path, const ValueGrid& grid)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    write_grid(out, grid);
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ValueGrid read_grid(std::istream& in)
{
    ValueGrid grid;
    if (!(in >> grid.counts[0] >> grid.counts[1] >> grid.counts[2])) throw IoError("bad grid header");
    for (int m = 0; m < 3; ++m) {
        if (!(in >> grid.lo[m] >> grid.hi[m])) throw IoError("bad grid header");
    }
    const std::size_t total = grid.counts[0] * grid.counts[1] * grid.counts[2];
    grid.values.resize(total);
    std::string tok;
    for (double& v : grid.values) {
        if (!(in >> tok)) throw IoError("truncated grid");
        v = tok == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(tok);
    }
    return grid;
}

} // namespace blockpu
