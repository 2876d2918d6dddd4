#include "oracles.hpp"

#include "tropic/calculus.hpp"
#include "tropic/error.hpp"
#include "tropic/matrix.hpp"

#include <doctest.h>

#include <random>

using namespace tropic;

namespace {

const SemiringSpec kMax = SemiringSpec::max_plus();
const SemiringSpec kMin = SemiringSpec::min_plus();
const ExtendedScalar kBot = ExtendedScalar::bottom();

std::vector<double> numeric(const GridFunction& f) {
    std::vector<double> v;
    for (const auto& x : f.values())
        v.push_back(x.to_numeric(f.spec()));
    return v;
}

std::vector<double> coords(const GridShape& s) {
    std::vector<double> v;
    for (std::size_t k = 0; k < s.extent[0]; ++k)
        v.push_back(s.coordinate(0, k));
    return v;
}

// Random concave function: integer increments that never increase.
GridFunction random_concave(std::mt19937_64& rng, std::size_t n, double origin, double step) {
    std::vector<ExtendedScalar> v;
    double value = static_cast<double>(rng() % 16);
    int slope = static_cast<int>(rng() % 40);
    for (std::size_t k = 0; k < n; ++k) {
        v.emplace_back(value / 4.0);
        slope -= static_cast<int>(rng() % 3);
        value += slope;
    }
    return GridFunction(GridShape::line(origin, step, n), std::move(v), kMax);
}

} // namespace

TEST_CASE("grid shape validation") {
    CHECK_THROWS_AS(GridShape::line(0.0, 0.0, 4), Error);
    CHECK_THROWS_AS(GridShape::line(0.0, -1.0, 4), Error);
    CHECK_THROWS_AS(GridShape::line(0.0, 1.0, 0), Error);
    CHECK_THROWS_AS(GridFunction(GridShape::line(0.0, 1.0, 3), {1.0, 2.0}, kMax), Error);
    CHECK(GridShape::line(-1.0, 0.25, 9).coordinate(0, 8) == 1.0);
}

TEST_CASE("idempotent integral") {
    const auto grid = GridShape::line(-1.0, 0.25, 9);
    CHECK(idempotent_integral(GridFunction::sample(grid, [](double) { return 3.0; })) == ExtendedScalar(3.0));
    CHECK(idempotent_integral(GridFunction::sample(grid, [](double x) { return -x * x; })) == ExtendedScalar(0.0));
    CHECK(idempotent_integral(GridFunction::sample(grid, [](double x) { return x; }, kMin)) == ExtendedScalar(-1.0));
    try {
        idempotent_integral(GridFunction(grid, kMax));
        FAIL("expected EmptyDomain");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyDomain);
    }
}

TEST_CASE("measure integral and scalar product") {
    const auto grid = GridShape::line(-1.0, 0.25, 9);
    const auto phi = GridFunction::sample(grid, [](double x) { return -std::abs(x); });
    const auto psi = GridFunction::sample(grid, [](double x) { return -std::abs(x - 0.5); });
    const auto unit = GridFunction::sample(grid, [](double) { return 0.0; });
    CHECK(measure_integral(phi, psi) == ExtendedScalar(-0.5));
    CHECK(measure_integral(phi, unit) == idempotent_integral(phi));
    CHECK(scalar_product(phi, psi) == scalar_product(psi, phi));
    CHECK(scalar_product(phi, unit) == idempotent_integral(phi));
    GridFunction point(grid, kMax);
    point[3] = 2.0;
    CHECK(measure_integral(point, psi) == ExtendedScalar(2.0 + psi[3].value()));
    const auto other = GridFunction::sample(GridShape::line(-1.0, 0.5, 5), [](double) { return 0.0; });
    try {
        measure_integral(phi, other);
        FAIL("expected GridMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GridMismatch);
    }
}

TEST_CASE("sup-convolution") {
    const auto grid = GridShape::line(-1.0, 0.25, 9);
    const auto phi = GridFunction::sample(grid, [](double x) { return -x * x; });
    // Identity element: unit at 0 only.
    GridFunction delta(GridShape::line(0.0, 0.25, 1), {0.0}, kMax);
    const auto same = sup_convolution(phi, delta);
    CHECK(same.values() == phi.values());
    CHECK(same.shape() == phi.shape());

    GridFunction a(GridShape::line(0.5, 0.25, 1), {2.0}, kMax);
    GridFunction b(GridShape::line(-0.25, 0.25, 1), {3.0}, kMax);
    const auto ab = sup_convolution(a, b);
    CHECK(ab.shape().origin[0] == 0.25);
    CHECK(ab.values() == std::vector<ExtendedScalar>{5.0});

    const auto pp = sup_convolution(phi, phi);
    CHECK(pp.shape().extent[0] == 17);
    CHECK(numeric(pp) == oracle::sup_convolution(numeric(phi), numeric(phi)));
    // At every gridpoint g the even split gives -g^2/2 exactly.
    for (std::size_t k = 0; k < 17; k += 2) {
        const double g = pp.shape().coordinate(0, k);
        CHECK(pp[k].value() == -g * g / 2.0);
    }
    CHECK_THROWS_AS(sup_convolution(phi, GridFunction::sample(GridShape::line(0.0, 0.5, 3), [](double) { return 0.0; })),
                    Error);
}

TEST_CASE("sup-convolution is commutative and associative") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        auto make = [&](std::size_t n, double origin) {
            std::vector<ExtendedScalar> v;
            for (std::size_t k = 0; k < n; ++k)
                v.push_back(rng() % 5 == 0 ? kBot : ExtendedScalar(static_cast<double>(rng() % 64) / 8.0));
            v[0] = 1.0;
            return GridFunction(GridShape::line(origin, 0.5, n), std::move(v), kMax);
        };
        const auto a = make(1 + rng() % 7, -1.0);
        const auto b = make(1 + rng() % 7, 0.5);
        const auto c = make(1 + rng() % 7, 2.0);
        CHECK(sup_convolution(a, b) == sup_convolution(b, a));
        CHECK(sup_convolution(sup_convolution(a, b), c) == sup_convolution(a, sup_convolution(b, c)));
    }
}

TEST_CASE("Legendre transform examples") {
    GridFunction point(GridShape::line(-1.0, 0.5, 5), kMax);
    point[3] = 0.0;  // x0 = 0.5
    const auto xi = GridShape::line(-2.0, 0.5, 9);
    const auto pt = legendre_transform(point, xi);
    for (std::size_t k = 0; k < 9; ++k)
        CHECK(pt[k].value() == 0.5 * xi.coordinate(0, k));

    const auto fine = GridShape::line(-4.0, 1.0 / 64.0, 513);
    const auto quad = GridFunction::sample(fine, [](double x) { return -x * x / 2.0; });
    const auto xi2 = GridShape::line(-2.0, 0.125, 33);
    const auto qt = legendre_transform(quad, xi2);
    for (std::size_t k = 0; k < 33; ++k) {
        const double s = xi2.coordinate(0, k);
        CHECK(qt[k].value() == oracle::legendre(coords(fine), numeric(quad), s));
        CHECK(std::abs(qt[k].value() - s * s / 2.0) <= fine.step[0]);
    }
}

TEST_CASE("Legendre kinks of a two-slope concave function") {
    // Slope 2 on [-2, 0], slope -1 on [0, 2].
    const auto grid = GridShape::line(-2.0, 0.25, 17);
    const auto phi = GridFunction::sample(grid, [](double x) { return x <= 0 ? 2.0 * x : -x; });
    const auto xi = GridShape::line(-4.0, 0.25, 33);
    const auto t = legendre_transform(phi, xi);
    for (std::size_t k = 1; k + 1 < 33; ++k) {
        const double second = t[k + 1].value() - 2.0 * t[k].value() + t[k - 1].value();
        const double s = xi.coordinate(0, k);
        if (s == -2.0 || s == 1.0)
            CHECK(second > 0.0);
        else
            CHECK(second == 0.0);
    }
}

TEST_CASE("fast and brute-force Legendre agree") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + rng() % 200;
        const auto phi = random_concave(rng, n, -static_cast<double>(n) / 8.0, 0.125);
        REQUIRE(is_discretely_concave(phi));
        const auto range = suggest_slope_range(phi);
        const auto xi = GridShape::line(range[0] - 1.0, 0.0625, 64 + static_cast<std::size_t>(16 * (range[1] - range[0])));
        const auto fast = legendre_transform(phi, xi, LegendreMethod::Fast);
        CHECK(fast == legendre_brute_force(phi, xi));
        const auto xs = coords(phi.shape());
        const auto vals = numeric(phi);
        for (std::size_t k = 0; k < xi.extent[0]; ++k)
            CHECK(fast[k].value() == oracle::legendre(xs, vals, xi.coordinate(0, k)));
        // Convex output.
        for (std::size_t k = 1; k + 1 < xi.extent[0]; ++k)
            CHECK(fast[k + 1].value() - 2.0 * fast[k].value() + fast[k - 1].value() >= 0.0);
    }
}

TEST_CASE("fast Legendre refuses non-concave input; auto falls back") {
    const auto grid = GridShape::line(-1.0, 0.5, 5);
    const auto phi = GridFunction::sample(grid, [](double x) { return x * x; });
    CHECK_FALSE(is_discretely_concave(phi));
    const auto xi = GridShape::line(-2.0, 0.5, 9);
    CHECK_THROWS_AS(legendre_transform(phi, xi, LegendreMethod::Fast), Error);
    CHECK(legendre_transform(phi, xi) == legendre_brute_force(phi, xi));
    CHECK_THROWS_AS(legendre_transform(GridFunction::sample(grid, [](double x) { return x; }, kMin), xi), Error);
}

TEST_CASE("Legendre transform turns sup-convolution into addition") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        std::vector<ExtendedScalar> a, b;
        const std::size_t na = 1 + rng() % 12, nb = 1 + rng() % 12;
        for (std::size_t k = 0; k < na; ++k)
            a.emplace_back(static_cast<double>(static_cast<int>(rng() % 64) - 32) / 4.0);
        for (std::size_t k = 0; k < nb; ++k)
            b.emplace_back(static_cast<double>(static_cast<int>(rng() % 64) - 32) / 4.0);
        const GridFunction phi(GridShape::line(-1.0, 0.25, na), a, kMax);
        const GridFunction psi(GridShape::line(0.5, 0.25, nb), b, kMax);
        const auto xi = GridShape::line(-8.0, 0.5, 33);
        const auto lhs = legendre_transform(sup_convolution(phi, psi), xi);
        const auto p = legendre_transform(phi, xi);
        const auto q = legendre_transform(psi, xi);
        for (std::size_t k = 0; k < 33; ++k)
            CHECK(lhs[k] == mul(p[k], q[k], kMax));
    }
}

TEST_CASE("biconjugation") {
    // Concave piecewise-linear input is recovered exactly.
    const auto grid = GridShape::line(-2.0, 0.25, 17);
    const auto phi = GridFunction::sample(grid, [](double x) { return std::min({2.0 * x + 1.0, 0.5 * x + 1.0, -x}); });
    const auto xi = GridShape::line(-4.0, 0.25, 33);
    CHECK(legendre_biconjugate(legendre_transform(phi, xi), grid) == phi);

    // Non-concave input: the biconjugate is the least concave majorant. The
    // hull slopes 2, 1/2 and -4 lie on the slope grid, so equality is exact.
    std::vector<ExtendedScalar> v{0.0, 0.5, 2.0, 1.0, 2.0, 2.75, 3.0, 0.0, -1.0};
    const GridFunction wavy(GridShape::line(0.0, 0.5, 9), v, kMax);
    const auto maj = least_concave_majorant(wavy);
    const std::vector<ExtendedScalar> hull{0.0, 1.0, 2.0, 2.25, 2.5, 2.75, 3.0, 1.0, -1.0};
    CHECK(maj.values() == hull);
    CHECK(is_discretely_concave(maj));
    for (std::size_t k = 0; k < 9; ++k)
        CHECK(leq(wavy[k], maj[k], kMax));
    const auto wide = GridShape::line(-8.0, 0.125, 161);
    const auto bi = legendre_biconjugate(legendre_transform(wavy, wide), wavy.shape());
    for (std::size_t k = 1; k + 1 < 9; ++k)
        CHECK(bi[k] == maj[k]);
}

TEST_CASE("kernel operators") {
    const auto x = GridShape::line(0.0, 1.0, 4);
    const auto y = GridShape::line(0.0, 1.0, 4);
    std::vector<ExtendedScalar> ident(16, kBot);
    for (std::size_t k = 0; k < 4; ++k)
        ident[k * 4 + k] = 0.0;
    const GridFunction phi(x, {1.0, -2.0, kBot, 0.5}, kMax);
    CHECK(apply_kernel(Kernel(x, y, ident, kMax), phi).values() == phi.values());
    const Kernel flat(x, GridShape::line(0.0, 1.0, 3), std::vector<ExtendedScalar>(12, 0.0), kMax);
    const auto flat_out = apply_kernel(flat, phi);
    for (const auto& v : flat_out.values())
        CHECK(v == idempotent_integral(phi));
    CHECK_THROWS_AS(apply_kernel(flat, GridFunction(GridShape::line(0.0, 1.0, 5), kMax)), Error);
}

TEST_CASE("kernel application equals the matrix product") {
    std::mt19937_64 rng(12);
    const auto x = GridShape::line(0.0, 1.0, 4);
    const auto y = GridShape::line(0.0, 1.0, 3);
    for (int t = 0; t < 20; ++t) {
        std::vector<ExtendedScalar> kv;
        for (int k = 0; k < 12; ++k)
            kv.push_back(rng() % 4 == 0 ? kBot : ExtendedScalar(static_cast<double>(rng() % 100) / 8.0));
        std::vector<ExtendedScalar> pv;
        for (int k = 0; k < 4; ++k)
            pv.push_back(rng() % 4 == 0 ? kBot : ExtendedScalar(static_cast<double>(rng() % 100) / 8.0));
        const Kernel k(x, y, kv, kMax);
        const GridFunction phi(x, pv, kMax);
        // Rows of the matrix are y, columns x.
        SemiringMatrix m(3, 4, kMax);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m(j, i) = k(i, j);
        const auto col = mat_mul(m, SemiringMatrix(4, 1, pv, kMax));
        CHECK(apply_kernel(k, phi).values() == col.entries());

        // Linearity over max-plus.
        std::vector<ExtendedScalar> qv;
        for (int j = 0; j < 4; ++j)
            qv.emplace_back(static_cast<double>(rng() % 50) / 4.0);
        const GridFunction psi(x, qv, kMax);
        const double l1 = 1.5, l2 = -0.75;
        std::vector<ExtendedScalar> comb;
        for (std::size_t j = 0; j < 4; ++j)
            comb.push_back(add(mul(l1, phi[j], kMax), mul(l2, psi[j], kMax), kMax));
        const auto lhs = apply_kernel(k, GridFunction(x, comb, kMax));
        const auto kp = apply_kernel(k, phi);
        const auto kq = apply_kernel(k, psi);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(lhs[j] == add(mul(l1, kp[j], kMax), mul(l2, kq[j], kMax), kMax));
    }
}

TEST_CASE("kernel from a 2-D grid") {
    GridShape s;
    s.dim = 2;
    s.origin = {0.0, -1.0};
    s.step = {0.5, 1.0};
    s.extent = {3, 2};
    const auto g = GridFunction::sample(s, [](double a, double b) { return a + 10.0 * b; });
    const auto k = Kernel::from_grid(g);
    CHECK(k.x_grid() == GridShape::line(0.0, 0.5, 3));
    CHECK(k.y_grid() == GridShape::line(-1.0, 1.0, 2));
    CHECK(k(2, 1) == ExtendedScalar(1.0));
    CHECK(k(1, 0) == ExtendedScalar(-9.5));
}
