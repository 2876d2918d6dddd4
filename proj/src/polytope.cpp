#include "tropic/polytope.hpp"

#include "tropic/error.hpp"
#include "tropic/format.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace tropic {

namespace {

using Vec3 = std::array<double, 3>;

Vec3 sub3(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm_inf(const Vec3& a) { return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])}); }

// Signed volume: > 0 when p lies on the side the normal of (a, b, c) points to.
double orient3(const Point& a, const Point& b, const Point& c, const Point& p) {
    return dot3(cross3(sub3(b, a), sub3(c, a)), sub3(p, a));
}

double cross2(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool near_equal(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > kGeomTolerance)
            return false;
    return true;
}

std::vector<Point> dedup_sorted(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    std::vector<Point> out;
    for (auto& p : pts)
        if (out.empty() || !near_equal(out.back(), p))
            out.push_back(std::move(p));
    return out;
}

// Andrew's monotone chain on sorted, deduplicated 2-D points. Collinear points
// are dropped; the chain starts at the lexicographically smallest point.
std::vector<std::size_t> hull2_indices(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    if (n <= 1)
        return n == 1 ? std::vector<std::size_t>{0} : std::vector<std::size_t>{};
    std::vector<std::size_t> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= kGeomTolerance)
            --k;
        h[k++] = i;
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= kGeomTolerance)
            --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    return h;
}

std::vector<Point> hull2(const std::vector<Point>& pts) {
    std::vector<Point> out;
    for (auto i : hull2_indices(pts))
        out.push_back(pts[i]);
    return out;
}

// Indices of the points of a planar 3-D set that are extreme within the plane.
std::vector<std::size_t> planar_extremes(const std::vector<Point>& pts, const std::vector<std::size_t>& subset,
                                         const Vec3& normal) {
    std::size_t drop = 0;
    for (std::size_t a = 1; a < 3; ++a)
        if (std::abs(normal[a]) > std::abs(normal[drop]))
            drop = a;
    std::vector<std::pair<Point, std::size_t>> proj;
    for (auto idx : subset) {
        Point q;
        for (std::size_t a = 0; a < 3; ++a)
            if (a != drop)
                q.push_back(pts[idx][a]);
        proj.emplace_back(std::move(q), idx);
    }
    std::sort(proj.begin(), proj.end());
    std::vector<Point> sorted;
    std::vector<std::size_t> origin;
    for (auto& [q, idx] : proj) {
        if (!sorted.empty() && near_equal(sorted.back(), q))
            continue;
        sorted.push_back(q);
        origin.push_back(idx);
    }
    std::vector<std::size_t> out;
    for (auto i : hull2_indices(sorted))
        out.push_back(origin[i]);
    return out;
}

std::vector<Point> extremes_along(const std::vector<Point>& pts, const Vec3& dir) {
    auto proj = [&](const Point& p) { return dot3({p[0], p[1], p[2]}, dir); };
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                        [&](const Point& a, const Point& b) { return proj(a) < proj(b); });
    std::vector<Point> out{*lo};
    if (!near_equal(*lo, *hi))
        out.push_back(*hi);
    std::sort(out.begin(), out.end());
    return out;
}

struct Face {
    std::size_t a, b, c;
};

std::vector<Point> hull3(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    if (n == 1)
        return pts;
    // Affine frame: p1 far from p0, p2 off the line, p3 off the plane.
    std::size_t i1 = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (norm_inf(sub3(pts[i], pts[0])) > norm_inf(sub3(pts[i1], pts[0])))
            i1 = i;
    const Vec3 u = sub3(pts[i1], pts[0]);
    std::size_t i2 = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = norm_inf(cross3(u, sub3(pts[i], pts[0])));
        if (c > best) {
            best = c;
            i2 = i;
        }
    }
    if (best <= kGeomTolerance)
        return extremes_along(pts, u);
    const Vec3 normal = cross3(u, sub3(pts[i2], pts[0]));
    std::size_t i3 = 0;
    best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::abs(orient3(pts[0], pts[i1], pts[i2], pts[i]));
        if (v > best) {
            best = v;
            i3 = i;
        }
    }
    if (best <= kGeomTolerance) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        std::vector<Point> out;
        for (auto i : planar_extremes(pts, all, normal))
            out.push_back(pts[i]);
        std::sort(out.begin(), out.end());
        return out;
    }

    // Incremental hull with outward-oriented triangles.
    std::size_t b = i1;
    std::size_t c = i2;
    if (orient3(pts[0], pts[b], pts[c], pts[i3]) > 0)
        std::swap(b, c);
    std::vector<Face> faces{{0, b, c}, {0, i3, b}, {b, i3, c}, {0, c, i3}};
    for (std::size_t p = 0; p < n; ++p) {
        if (p == 0 || p == i1 || p == i2 || p == i3)
            continue;
        std::vector<bool> visible(faces.size());
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            const auto& fc = faces[f];
            visible[f] = orient3(pts[fc.a], pts[fc.b], pts[fc.c], pts[p]) > kGeomTolerance;
            any = any || visible[f];
        }
        if (!any)
            continue;
        std::set<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (visible[f]) {
                const auto& fc = faces[f];
                edges.insert({fc.a, fc.b});
                edges.insert({fc.b, fc.c});
                edges.insert({fc.c, fc.a});
            }
        std::vector<Face> next;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (!visible[f])
                next.push_back(faces[f]);
        for (const auto& [x, y] : edges)
            if (!edges.count({y, x}))
                next.push_back({x, y, p});
        faces = std::move(next);
    }

    // Triangulated facets may carry points that are not extreme (on an edge or
    // inside a flat facet); keep only the 2-D hull vertices of every facet plane.
    std::vector<std::size_t> candidates;
    for (const auto& f : faces)
        for (auto v : {f.a, f.b, f.c})
            candidates.push_back(v);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<bool> extreme(n, false);
    std::vector<bool> face_done(faces.size(), false);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        if (face_done[f])
            continue;
        const auto& fc = faces[f];
        const Vec3 nrm = cross3(sub3(pts[fc.b], pts[fc.a]), sub3(pts[fc.c], pts[fc.a]));
        auto on_plane = [&](std::size_t v) { return std::abs(dot3(nrm, sub3(pts[v], pts[fc.a]))) <= kGeomTolerance; };
        for (std::size_t g = f; g < faces.size(); ++g) {
            const auto& gc = faces[g];
            if (on_plane(gc.a) && on_plane(gc.b) && on_plane(gc.c))
                face_done[g] = true;
        }
        std::vector<std::size_t> subset;
        for (auto v : candidates)
            if (on_plane(v))
                subset.push_back(v);
        for (auto v : planar_extremes(pts, subset, nrm))
            extreme[v] = true;
    }
    std::vector<Point> out;
    for (std::size_t i = 0; i < n; ++i)
        if (extreme[i])
            out.push_back(pts[i]);
    std::sort(out.begin(), out.end());
    return out;
}

void require_same_dim(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim())
        throw Error(ErrorKind::DimMismatch,
                    "dimensions " + std::to_string(p.dim()) + " and " + std::to_string(q.dim()));
}

std::string describe(const Polytope& p) {
    std::string s = "{";
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
        if (i)
            s += "; ";
        for (std::size_t a = 0; a < p.vertices()[i].size(); ++a)
            s += (a ? " " : "") + format_double(p.vertices()[i][a]);
    }
    return s + "}";
}

} // namespace

double dot(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

std::vector<Point> canonical_vertices(const std::vector<Point>& points) {
    if (points.empty())
        throw Error(ErrorKind::InvalidArgument, "hull of an empty point set");
    const std::size_t d = points.front().size();
    if (d < 1 || d > 3)
        throw Error(ErrorKind::DimensionUnsupported, "polytopes are supported in dimensions 1-3, got " +
                                                         std::to_string(d));
    for (const auto& p : points) {
        if (p.size() != d)
            throw Error(ErrorKind::InvalidArgument, "points of mixed dimension");
        for (double x : p)
            if (!std::isfinite(x))
                throw Error(ErrorKind::InvalidArgument, "non-finite coordinate");
    }
    auto pts = dedup_sorted(points);
    if (d == 1) {
        std::vector<Point> out{pts.front()};
        if (!near_equal(pts.front(), pts.back()))
            out.push_back(pts.back());
        return out;
    }
    if (d == 2)
        return hull2(pts);
    return hull3(pts);
}

Polytope Polytope::hull(const std::vector<Point>& points) {
    auto v = canonical_vertices(points);
    const int d = static_cast<int>(v.front().size());
    return Polytope(d, std::move(v));
}

bool Polytope::operator==(const Polytope& other) const {
    if (dim_ != other.dim_ || vertices_.size() != other.vertices_.size())
        return false;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (!near_equal(vertices_[i], other.vertices_[i]))
            return false;
    return true;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
    require_same_dim(p, q);
    std::vector<Point> sums;
    sums.reserve(p.vertices().size() * q.vertices().size());
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) {
            Point s(a.size());
            for (std::size_t i = 0; i < a.size(); ++i)
                s[i] = a[i] + b[i];
            sums.push_back(std::move(s));
        }
    return Polytope::hull(sums);
}

Polytope hull_union(const Polytope& p, const Polytope& q) {
    require_same_dim(p, q);
    auto pts = p.vertices();
    pts.insert(pts.end(), q.vertices().begin(), q.vertices().end());
    return Polytope::hull(pts);
}

double support_function(const Polytope& p, const Point& direction) {
    if (static_cast<int>(direction.size()) != p.dim())
        throw Error(ErrorKind::DimMismatch, "direction of dimension " + std::to_string(direction.size()) +
                                                " for a polytope of dimension " + std::to_string(p.dim()));
    double best = dot(p.vertices().front(), direction);
    for (const auto& v : p.vertices())
        best = std::max(best, dot(v, direction));
    return best;
}

std::vector<Point> probe_directions(int dim) {
    std::vector<Point> dirs;
    dirs.reserve(64);
    constexpr double kPi = 3.14159265358979323846;
    for (int k = 0; k < 64; ++k) {
        if (dim == 1) {
            const double m = static_cast<double>(k / 2 + 1);
            dirs.push_back({k % 2 ? -m : m});
        } else if (dim == 2) {
            const double t = 2.0 * kPi * k / 64.0;
            dirs.push_back({std::round(16.0 * std::cos(t)), std::round(16.0 * std::sin(t))});
        } else {
            // Fibonacci sphere, scaled and rounded to integers.
            const double z = 1.0 - (2.0 * k + 1.0) / 64.0;
            const double r = std::sqrt(1.0 - z * z);
            const double t = kPi * (3.0 - std::sqrt(5.0)) * k;
            dirs.push_back({std::round(16.0 * r * std::cos(t)), std::round(16.0 * r * std::sin(t)),
                            std::round(16.0 * z)});
        }
    }
    return dirs;
}

bool equal_by_support(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim() || p.vertices().size() != q.vertices().size())
        return false;
    for (const auto& d : probe_directions(p.dim()))
        if (std::abs(support_function(p, d) - support_function(q, d)) > kGeomTolerance)
            return false;
    return true;
}

SublinearFunction::SublinearFunction(std::vector<Point> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty())
        throw Error(ErrorKind::InvalidArgument, "sublinear function needs at least one piece");
    for (const auto& v : pieces_)
        if (v.size() != pieces_.front().size() || v.empty())
            throw Error(ErrorKind::InvalidArgument, "pieces of mixed dimension");
}

double SublinearFunction::operator()(const Point& x) const {
    double best = dot(pieces_.front(), x);
    for (const auto& v : pieces_)
        best = std::max(best, dot(v, x));
    return best;
}

SublinearFunction operator+(const SublinearFunction& a, const SublinearFunction& b) {
    if (a.dim() != b.dim())
        throw Error(ErrorKind::DimMismatch, "sum of sublinear functions of different dimension");
    std::vector<Point> pieces;
    for (const auto& u : a.pieces())
        for (const auto& v : b.pieces()) {
            Point s(u.size());
            for (std::size_t i = 0; i < u.size(); ++i)
                s[i] = u[i] + v[i];
            pieces.push_back(std::move(s));
        }
    return SublinearFunction(std::move(pieces));
}

SublinearFunction pointwise_max(const SublinearFunction& a, const SublinearFunction& b) {
    if (a.dim() != b.dim())
        throw Error(ErrorKind::DimMismatch, "max of sublinear functions of different dimension");
    auto pieces = a.pieces();
    pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
    return SublinearFunction(std::move(pieces));
}

Polytope subdifferential_at_origin(const SublinearFunction& p) { return Polytope::hull(p.pieces()); }

SublinearFunction support_sublinear(const Polytope& p) { return SublinearFunction(p.vertices()); }

LawReport semiring_law_check(const Polytope& p, const Polytope& q, const Polytope& r) {
    require_same_dim(p, q);
    require_same_dim(p, r);
    LawReport report;
    auto expect = [&](const char* law, const Polytope& lhs, const Polytope& rhs) {
        if (!(lhs == rhs))
            throw Error(ErrorKind::LawViolation, std::string(law) + ": " + describe(lhs) + " != " + describe(rhs) +
                                                     " for P=" + describe(p) + " Q=" + describe(q) +
                                                     " R=" + describe(r));
        report.checked.emplace_back(law);
    };
    const Polytope unit = Polytope::point(Point(static_cast<std::size_t>(p.dim()), 0.0));

    expect("oplus commutative", hull_union(p, q), hull_union(q, p));
    expect("oplus associative", hull_union(hull_union(p, q), r), hull_union(p, hull_union(q, r)));
    expect("oplus idempotent", hull_union(p, p), p);
    expect("otimes commutative", minkowski_sum(p, q), minkowski_sum(q, p));
    expect("otimes associative", minkowski_sum(minkowski_sum(p, q), r), minkowski_sum(p, minkowski_sum(q, r)));
    expect("otimes identity", minkowski_sum(p, unit), p);
    expect("distributive", minkowski_sum(p, hull_union(q, r)), hull_union(minkowski_sum(p, q), minkowski_sum(p, r)));

    const auto sp = support_sublinear(p);
    const auto sq = support_sublinear(q);
    expect("subdifferential of sum", subdifferential_at_origin(sp + sq), minkowski_sum(p, q));
    expect("subdifferential of max", subdifferential_at_origin(pointwise_max(sp, sq)), hull_union(p, q));

    const auto sum_sub = subdifferential_at_origin(sp + sq);
    for (const auto& d : probe_directions(p.dim()))
        if (std::abs(support_function(sum_sub, d) - (sp + sq)(d)) > kGeomTolerance)
            throw Error(ErrorKind::LawViolation, "support of the subdifferential differs from p1 + p2");
    report.checked.emplace_back("subdifferential support");
    return report;
}

} // namespace tropic
