#include "oracles.hpp"

#include "tropic/error.hpp"
#include "tropic/polytope.hpp"

#include <doctest.h>

#include <random>

using namespace tropic;

namespace {

std::vector<Point> random_dyadic_points(std::mt19937_64& rng, std::size_t n, int dim) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        Point p;
        for (int k = 0; k < dim; ++k)
            p.push_back(static_cast<double>(static_cast<int>(rng() % 33) - 16) / 4.0);
        pts.push_back(p);
    }
    return pts;
}

std::vector<Point> sorted(std::vector<Point> v) {
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

TEST_CASE("hull canonical forms") {
    CHECK(Polytope::hull({{3.0}, {-1.0}, {2.0}}).vertices() == std::vector<Point>{{-1.0}, {3.0}});
    CHECK(Polytope::hull({{1, 1}, {1, 1}}).vertices() == std::vector<Point>{{1, 1}});
    // Collinear points in the plane reduce to a segment.
    CHECK(Polytope::hull({{0, 0}, {2, 2}, {1, 1}, {3, 3}}).vertices() == std::vector<Point>{{0, 0}, {3, 3}});
    // Square with interior and edge points, CCW from the lexicographic minimum.
    const auto sq = Polytope::hull({{1, 1}, {0, 0}, {2, 0}, {0, 2}, {2, 2}, {1, 0}, {0.5, 1.5}});
    CHECK(sq.vertices() == std::vector<Point>{{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    CHECK(Polytope::hull(sq.vertices()) == sq);
    CHECK_THROWS_AS(Polytope::hull({}), Error);
    CHECK_THROWS_AS(Polytope::hull({{1, 2}, {1}}), Error);
}

TEST_CASE("3-D hulls") {
    std::vector<Point> cube;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                cube.push_back({double(a), double(b), double(c)});
    auto pts = cube;
    pts.push_back({0.5, 0.5, 0.5});
    pts.push_back({0.5, 0.0, 0.5});  // face centre
    pts.push_back({1.0, 0.5, 1.0});  // edge midpoint
    const auto p = Polytope::hull(pts);
    CHECK(sorted(p.vertices()) == sorted(cube));
    // Coplanar and collinear sets in space.
    const auto flat = Polytope::hull({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {0.25, 0.25, 1}});
    CHECK(flat.vertices().size() == 3);
    const auto line = Polytope::hull({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}});
    CHECK(sorted(line.vertices()) == std::vector<Point>{{0, 0, 0}, {2, 2, 2}});
    std::mt19937_64 rng(6);
    for (int t = 0; t < 20; ++t) {
        const auto raw = random_dyadic_points(rng, 4 + rng() % 20, 3);
        const auto h = Polytope::hull(raw);
        for (const auto& d : probe_directions(3))
            CHECK(support_function(h, d) == oracle::support(raw, d));
        // Every reported vertex is an input point.
        for (const auto& v : h.vertices())
            CHECK(std::find(raw.begin(), raw.end(), v) != raw.end());
    }
}

TEST_CASE("planar hulls agree with the brute-force extreme-point oracle") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        const auto raw = random_dyadic_points(rng, 1 + rng() % 15, 2);
        CHECK(sorted(Polytope::hull(raw).vertices()) == oracle::planar_vertices(raw));
    }
}

TEST_CASE("Minkowski sum and hull of union examples") {
    const auto origin = Polytope::point({0.0, 0.0});
    const auto tri = Polytope::hull({{0, 0}, {1, 0}, {0, 1}});
    CHECK(minkowski_sum(tri, origin) == tri);
    CHECK(minkowski_sum(Polytope::hull({{0.0}, {1.0}}), Polytope::hull({{0.0}, {1.0}})).vertices() ==
          std::vector<Point>{{0.0}, {2.0}});
    CHECK(minkowski_sum(tri, tri).vertices() == std::vector<Point>{{0, 0}, {2, 0}, {0, 2}});
    CHECK(hull_union(tri, tri) == tri);
    CHECK(hull_union(Polytope::point({0.0}), Polytope::point({1.0})).vertices() == std::vector<Point>{{0.0}, {1.0}});
    const auto t2 = Polytope::hull({{3, 0}, {4, 0}, {3, 1}});
    std::vector<Point> both = tri.vertices();
    both.insert(both.end(), t2.vertices().begin(), t2.vertices().end());
    CHECK(sorted(hull_union(tri, t2).vertices()) == oracle::planar_vertices(both));
    try {
        minkowski_sum(tri, Polytope::point({0.0}));
        FAIL("expected DimMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DimMismatch);
    }
    CHECK_THROWS_AS(hull_union(tri, Polytope::point({0.0})), Error);
}

TEST_CASE("support functions") {
    CHECK(support_function(Polytope::point({2.0, -1.0}), {3.0, 4.0}) == 2.0);
    CHECK(support_function(Polytope::hull({{0.0}, {7.0}}), {1.0}) == 7.0);
    CHECK(support_function(Polytope::hull({{0, 0}, {1, 0}, {0, 1}}), {1.0, 1.0}) == 1.0);
    CHECK_THROWS_AS(support_function(Polytope::point({0.0}), {1.0, 1.0}), Error);
    CHECK(probe_directions(2).size() == 64);
    CHECK(probe_directions(3).size() == 64);
}

TEST_CASE("random Minkowski sums and unions match brute force") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        const auto a = random_dyadic_points(rng, 1 + rng() % 8, 2);
        const auto b = random_dyadic_points(rng, 1 + rng() % 8, 2);
        std::vector<Point> sums, uni = a;
        for (const auto& p : a)
            for (const auto& q : b)
                sums.push_back({p[0] + q[0], p[1] + q[1]});
        uni.insert(uni.end(), b.begin(), b.end());
        const auto pa = Polytope::hull(a), pb = Polytope::hull(b);
        CHECK(sorted(minkowski_sum(pa, pb).vertices()) == oracle::planar_vertices(sums));
        CHECK(sorted(hull_union(pa, pb).vertices()) == oracle::planar_vertices(uni));
        CHECK(minkowski_sum(pa, pb).vertices().size() <= pa.vertices().size() * pb.vertices().size());
        CHECK(equal_by_support(minkowski_sum(pa, pb), minkowski_sum(pb, pa)));
    }
}

TEST_CASE("subdifferentials of sublinear functions") {
    CHECK(subdifferential_at_origin(SublinearFunction({{1.0, 2.0}})).vertices() == std::vector<Point>{{1.0, 2.0}});
    const SublinearFunction abs({{1.0}, {-1.0}});
    const auto seg = subdifferential_at_origin(abs);
    CHECK(seg.vertices() == std::vector<Point>{{-1.0}, {1.0}});
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0})
        CHECK(support_function(seg, {x}) == abs({x}));
    const auto tri = subdifferential_at_origin(SublinearFunction({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(tri.vertices() == std::vector<Point>{{0, 0}, {1, 0}, {0, 1}});
    CHECK_THROWS_AS(SublinearFunction({}), Error);
    const auto back = support_sublinear(tri);
    for (const auto& d : probe_directions(2))
        CHECK(back(d) == support_function(tri, d));
}

TEST_CASE("subdifferential is a semiring homomorphism") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        const SublinearFunction p1(random_dyadic_points(rng, 1 + rng() % 6, 2));
        const SublinearFunction p2(random_dyadic_points(rng, 1 + rng() % 6, 2));
        CHECK(subdifferential_at_origin(p1 + p2) ==
              minkowski_sum(subdifferential_at_origin(p1), subdifferential_at_origin(p2)));
        CHECK(subdifferential_at_origin(pointwise_max(p1, p2)) ==
              hull_union(subdifferential_at_origin(p1), subdifferential_at_origin(p2)));
        for (const auto& d : probe_directions(2)) {
            CHECK((p1 + p2)(d) == p1(d) + p2(d));
            CHECK(pointwise_max(p1, p2)(d) == std::max(p1(d), p2(d)));
        }
    }
}

TEST_CASE("semiring law check") {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 30; ++t) {
        const auto p = Polytope::hull(random_dyadic_points(rng, 1 + rng() % 5, 2));
        const auto q = Polytope::hull(random_dyadic_points(rng, 1 + rng() % 5, 2));
        const auto r = Polytope::hull(random_dyadic_points(rng, 1 + rng() % 5, 2));
        const auto rep = semiring_law_check(p, q, r);
        CHECK(rep.checked.size() >= 10);
    }
    // Degenerate members: points and segments.
    const auto pt = Polytope::point({1.0, 1.0});
    const auto seg = Polytope::hull({{0, 0}, {2, 1}});
    CHECK_NOTHROW(semiring_law_check(pt, seg, seg));
    CHECK_THROWS_AS(semiring_law_check(pt, Polytope::point({1.0}), seg), Error);
}

TEST_CASE("equality uses a tolerance of 1e-9") {
    const auto a = Polytope::hull({{0, 0}, {1, 0}, {0, 1}});
    const auto b = Polytope::hull({{0, 0}, {1 + 1e-12, 0}, {0, 1}});
    const auto c = Polytope::hull({{0, 0}, {1 + 1e-6, 0}, {0, 1}});
    CHECK(a == b);
    CHECK_FALSE(a == c);
    CHECK(canonical_vertices(a.vertices()) == a.vertices());
}
