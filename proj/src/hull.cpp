#include "blockpu/errors.hpp"
#include "blockpu/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

namespace blockpu {
namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

void finish_bounds(ConvexDomain& dom)
{
    dom.rect = bounding_rect(dom.vertices);
    dom.box = bounding_cube(dom.rect);
}

// ---------------------------------------------------------------------------
// 2D: Andrew's monotone chain.

ConvexDomain hull_2d(const PointSet& pts)
{
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pts.coord(a, 0) != pts.coord(b, 0)) return pts.coord(a, 0) < pts.coord(b, 0);
        return pts.coord(a, 1) < pts.coord(b, 1);
    });

    auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
        return (pts.coord(a, 0) - pts.coord(o, 0)) * (pts.coord(b, 1) - pts.coord(o, 1)) -
               (pts.coord(a, 1) - pts.coord(o, 1)) * (pts.coord(b, 0) - pts.coord(o, 0));
    };

    std::vector<std::size_t> chain(2 * order.size());
    std::size_t k = 0;
    for (std::size_t i : order) {
        while (k >= 2 && turn(chain[k - 2], chain[k - 1], i) <= 0) --k;
        chain[k++] = i;
    }
    for (std::size_t t = order.size() - 1, lower = k + 1; t-- > 0;) {
        const std::size_t i = order[t];
        while (k >= lower && turn(chain[k - 2], chain[k - 1], i) <= 0) --k;
        chain[k++] = i;
    }
    chain.resize(k > 0 ? k - 1 : 0);

    // Area via the shoelace form of a fan triangulation.
    double twice_area = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const std::size_t a = chain[i];
        const std::size_t b = chain[(i + 1) % chain.size()];
        twice_area += pts.coord(a, 0) * pts.coord(b, 1) - pts.coord(b, 0) * pts.coord(a, 1);
    }
    const AxisBox rect = bounding_rect(pts);
    const double scale = std::max(rect.extent(0), rect.extent(1));
    if (chain.size() < 3 || !(0.5 * twice_area > 1e-14 * scale * scale)) {
        throw DegenerateInput("points are collinear");
    }

    ConvexDomain dom;
    dom.dim = 2;
    dom.vertices = pts.subset(chain);
    dom.measure = 0.5 * twice_area;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto a = pts[chain[i]];
        const auto b = pts[chain[(i + 1) % chain.size()]];
        const double dx = b[0] - a[0];
        const double dy = b[1] - a[1];
        const double len = std::hypot(dx, dy);
        Facet f;
        f.normal = {dy / len, -dx / len, 0.0};
        f.offset = f.normal[0] * a[0] + f.normal[1] * a[1];
        dom.facets.push_back(f);
    }
    finish_bounds(dom);
    return dom;
}

// ---------------------------------------------------------------------------
// 3D: quickhull with per-face outside sets.

struct Face {
    std::array<int, 3> v{};
    Vec3 normal{};
    double offset = 0.0;
    std::vector<int> outside;
    bool alive = true;
};

class QuickHull3 {
public:
    explicit QuickHull3(const PointSet& pts) : pts_(pts)
    {
        const AxisBox rect = bounding_rect(pts);
        scale_ = std::max({rect.extent(0), rect.extent(1), rect.extent(2)});
        eps_ = 1e-13 * scale_;
    }

    ConvexDomain run()
    {
        initial_simplex();
        std::vector<int> work;
        for (int f = 0; f < static_cast<int>(faces_.size()); ++f) work.push_back(f);
        while (!work.empty()) {
            const int f = work.back();
            work.pop_back();
            if (!faces_[f].alive || faces_[f].outside.empty()) continue;
            add_point(f, work);
        }
        return assemble();
    }

private:
    Vec3 at(int i) const
    {
        return {pts_.coord(i, 0), pts_.coord(i, 1), pts_.coord(i, 2)};
    }

    double signed_distance(const Face& f, int i) const
    {
        return dot(f.normal, at(i)) - f.offset;
    }

    static std::uint64_t edge_key(int a, int b)
    {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }

    int make_face(int a, int b, int c)
    {
        Face f;
        f.v = {a, b, c};
        const Vec3 n = cross(sub(at(b), at(a)), sub(at(c), at(a)));
        const double len = norm(n);
        f.normal = {n[0] / len, n[1] / len, n[2] / len};
        f.offset = dot(f.normal, at(a));
        faces_.push_back(std::move(f));
        const int id = static_cast<int>(faces_.size()) - 1;
        for (int e = 0; e < 3; ++e) edges_[edge_key(faces_[id].v[e], faces_[id].v[(e + 1) % 3])] = id;
        return id;
    }

    void initial_simplex()
    {
        const int n = static_cast<int>(pts_.size());
        // Extreme points along each axis.
        std::array<int, 6> ext{};
        for (int m = 0; m < 3; ++m) {
            int lo = 0;
            int hi = 0;
            for (int i = 1; i < n; ++i) {
                if (pts_.coord(i, m) < pts_.coord(lo, m)) lo = i;
                if (pts_.coord(i, m) > pts_.coord(hi, m)) hi = i;
            }
            ext[2 * m] = lo;
            ext[2 * m + 1] = hi;
        }
        int i0 = ext[0];
        int i1 = ext[1];
        double best = -1.0;
        for (int a = 0; a < 6; ++a) {
            for (int b = a + 1; b < 6; ++b) {
                const double d = norm(sub(at(ext[a]), at(ext[b])));
                if (d > best) {
                    best = d;
                    i0 = ext[a];
                    i1 = ext[b];
                }
            }
        }
        if (!(best > 1e-12 * std::max(scale_, 1e-300))) throw DegenerateInput("points coincide");

        const Vec3 dir = sub(at(i1), at(i0));
        int i2 = -1;
        best = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = norm(cross(dir, sub(at(i), at(i0)))) / norm(dir);
            if (d > best) {
                best = d;
                i2 = i;
            }
        }
        if (i2 < 0 || best <= 1e-12 * scale_) throw DegenerateInput("points are collinear");

        const Vec3 pn = cross(dir, sub(at(i2), at(i0)));
        const double pn_len = norm(pn);
        int i3 = -1;
        best = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = std::abs(dot(pn, sub(at(i), at(i0)))) / pn_len;
            if (d > best) {
                best = d;
                i3 = i;
            }
        }
        if (i3 < 0 || best <= 1e-12 * scale_) throw DegenerateInput("points are coplanar");

        for (int m = 0; m < 3; ++m) {
            interior_[m] = 0.25 * (pts_.coord(i0, m) + pts_.coord(i1, m) + pts_.coord(i2, m) +
                                   pts_.coord(i3, m));
        }
        // Orient so that i3 lies below the base triangle.
        if (dot(pn, sub(at(i3), at(i0))) > 0) std::swap(i1, i2);
        make_face(i0, i1, i2);
        make_face(i0, i3, i1);
        make_face(i1, i3, i2);
        make_face(i2, i3, i0);

        for (int i = 0; i < n; ++i) {
            if (i == i0 || i == i1 || i == i2 || i == i3) continue;
            assign(i, 0, 4);
        }
    }

    // Put point i in the outside set of the first face in [first, last) that sees it.
    void assign(int i, int first, int last)
    {
        for (int f = first; f < last; ++f) {
            if (signed_distance(faces_[f], i) > eps_) {
                faces_[f].outside.push_back(i);
                return;
            }
        }
    }

    void add_point(int start, std::vector<int>& work)
    {
        Face& sf = faces_[start];
        int eye = sf.outside.front();
        double far = signed_distance(sf, eye);
        for (int i : sf.outside) {
            const double d = signed_distance(sf, i);
            if (d > far) {
                far = d;
                eye = i;
            }
        }

        // Flood the faces visible from the eye point.
        std::vector<int> visible{start};
        std::vector<char> is_visible(faces_.size(), 0);
        is_visible[start] = 1;
        for (std::size_t k = 0; k < visible.size(); ++k) {
            const Face& f = faces_[visible[k]];
            for (int e = 0; e < 3; ++e) {
                const int g = edges_.at(edge_key(f.v[(e + 1) % 3], f.v[e]));
                if (is_visible[g]) continue;
                if (signed_distance(faces_[g], eye) > eps_) {
                    is_visible[g] = 1;
                    visible.push_back(g);
                }
            }
        }

        std::vector<std::array<int, 2>> horizon;
        for (int fv : visible) {
            const Face& f = faces_[fv];
            for (int e = 0; e < 3; ++e) {
                const int a = f.v[e];
                const int b = f.v[(e + 1) % 3];
                if (!is_visible[edges_.at(edge_key(b, a))]) horizon.push_back({a, b});
            }
        }

        std::vector<int> orphans;
        for (int fv : visible) {
            Face& f = faces_[fv];
            for (int i : f.outside) {
                if (i != eye) orphans.push_back(i);
            }
            f.outside.clear();
            f.outside.shrink_to_fit();
            f.alive = false;
            for (int e = 0; e < 3; ++e) edges_.erase(edge_key(f.v[e], f.v[(e + 1) % 3]));
        }

        const int first = static_cast<int>(faces_.size());
        for (const auto& h : horizon) make_face(h[0], h[1], eye);
        const int last = static_cast<int>(faces_.size());
        for (int i : orphans) assign(i, first, last);
        for (int f = first; f < last; ++f) {
            if (!faces_[f].outside.empty()) work.push_back(f);
        }
    }

    ConvexDomain assemble() const
    {
        ConvexDomain dom;
        dom.dim = 3;
        std::vector<std::size_t> verts;
        double volume = 0.0;
        for (const Face& f : faces_) {
            if (!f.alive) continue;
            Facet h;
            h.normal = f.normal;
            h.offset = f.offset;
            dom.facets.push_back(h);
            for (int v : f.v) verts.push_back(static_cast<std::size_t>(v));
            // Cone from the interior reference point over this facet.
            const Vec3 a = sub(at(f.v[0]), interior_);
            const Vec3 b = sub(at(f.v[1]), interior_);
            const Vec3 c = sub(at(f.v[2]), interior_);
            volume += dot(a, cross(b, c)) / 6.0;
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        dom.vertices = pts_.subset(verts);
        dom.measure = volume;
        finish_bounds(dom);
        return dom;
    }

    const PointSet& pts_;
    double scale_ = 0.0;
    double eps_ = 0.0;
    Vec3 interior_{};
    std::vector<Face> faces_;
    std::unordered_map<std::uint64_t, int> edges_;
};

} // namespace

ConvexDomain convex_hull(const PointSet& pts)
{
    const auto need = static_cast<std::size_t>(pts.dim() + 1);
    if (pts.size() < need) {
        throw DegenerateInput("need at least " + std::to_string(need) + " points, got " +
                              std::to_string(pts.size()));
    }
    if (pts.dim() == 2) return hull_2d(pts);
    if (pts.dim() == 3) return QuickHull3(pts).run();
    throw InvalidArgument("convex_hull supports M=2 and M=3 only");
}

} // namespace blockpu
