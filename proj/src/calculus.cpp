#include "tropic/calculus.hpp"

#include "tropic/error.hpp"
#include "tropic/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace tropic {

namespace {

void require_max_plus(const SemiringSpec& s, const char* op) {
    if (s.kind() != SemiringKind::MaxPlus)
        throw Error(ErrorKind::SpecMismatch, std::string(op) + " is defined over maxplus, got " + s.name());
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!(a.shape() == b.shape()))
        throw Error(ErrorKind::GridMismatch, "functions live on different grids");
    if (a.spec() != b.spec())
        throw Error(ErrorKind::SpecMismatch, a.spec().name() + " vs " + b.spec().name());
}

double dot_at(const GridShape& g, std::size_t flat, const GridShape& xi, std::size_t xi_flat) {
    if (g.dim == 1)
        return xi.coordinate(0, xi_flat) * g.coordinate(0, flat);
    const std::size_t gi = flat / g.extent[1];
    const std::size_t gj = flat % g.extent[1];
    const std::size_t xi_i = xi_flat / xi.extent[1];
    const std::size_t xi_j = xi_flat % xi.extent[1];
    return xi.coordinate(0, xi_i) * g.coordinate(0, gi) + xi.coordinate(1, xi_j) * g.coordinate(1, gj);
}

// Contiguous range [first, last] of finite values, if the support has no holes.
struct FiniteRun {
    std::size_t first;
    std::size_t last;
};

std::optional<FiniteRun> finite_run(const GridFunction& phi) {
    const auto& v = phi.values();
    std::size_t first = v.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_top())
            return std::nullopt;
        if (v[i].is_finite()) {
            first = std::min(first, i);
            last = i;
        }
    }
    if (first == v.size())
        return std::nullopt;
    for (std::size_t i = first; i <= last; ++i)
        if (!v[i].is_finite())
            return std::nullopt;
    return FiniteRun{first, last};
}

GridFunction legendre_fast(const GridFunction& phi, const GridShape& xi_grid, const FiniteRun& run) {
    const auto& s = phi.spec();
    const auto& g = phi.shape();
    std::vector<ExtendedScalar> out(xi_grid.size());
    auto value = [&](std::size_t xi_k, std::size_t i) {
        return mul(ExtendedScalar(xi_grid.coordinate(0, xi_k) * g.coordinate(0, i)), phi[i], s);
    };
    // Concavity makes the maximizer nondecreasing in xi (xi_grid.step > 0).
    std::size_t arg = run.first;
    for (std::size_t k = 0; k < xi_grid.extent[0]; ++k) {
        auto best = value(k, arg);
        while (arg < run.last) {
            auto next = value(k, arg + 1);
            if (next.value() < best.value())
                break;
            best = next;
            ++arg;
        }
        out[k] = best;
    }
    return GridFunction(xi_grid, std::move(out), s);
}

} // namespace

GridShape GridShape::line(double origin, double step, std::size_t count) {
    GridShape g;
    g.dim = 1;
    g.origin = {origin, 0.0};
    g.step = {step, 1.0};
    g.extent = {count, 1};
    g.validate();
    return g;
}

GridShape GridShape::plane(std::array<double, 2> origin, std::array<double, 2> step,
                           std::array<std::size_t, 2> extent) {
    GridShape g;
    g.dim = 2;
    g.origin = origin;
    g.step = step;
    g.extent = extent;
    g.validate();
    return g;
}

void GridShape::validate() const {
    if (dim != 1 && dim != 2)
        throw Error(ErrorKind::InvalidArgument, "grid dimension must be 1 or 2");
    for (int a = 0; a < dim; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        if (!(step[ua] > 0.0) || !std::isfinite(step[ua]) || !std::isfinite(origin[ua]))
            throw Error(ErrorKind::InvalidArgument, "grid step must be positive and finite");
        if (extent[ua] == 0)
            throw Error(ErrorKind::InvalidArgument, "grid extent must be positive");
    }
}

bool GridShape::operator==(const GridShape& o) const noexcept {
    if (dim != o.dim)
        return false;
    for (std::size_t a = 0; a < static_cast<std::size_t>(dim); ++a)
        if (origin[a] != o.origin[a] || step[a] != o.step[a] || extent[a] != o.extent[a])
            return false;
    return true;
}

GridFunction::GridFunction(GridShape shape, SemiringSpec spec)
    : shape_(shape), values_(shape.size(), zero(spec)), spec_(spec) {
    shape_.validate();
}

GridFunction::GridFunction(GridShape shape, std::vector<ExtendedScalar> values, SemiringSpec spec)
    : shape_(shape), values_(std::move(values)), spec_(spec) {
    shape_.validate();
    if (values_.size() != shape_.size())
        throw Error(ErrorKind::GridMismatch, std::to_string(values_.size()) + " values for a grid of " +
                                                 std::to_string(shape_.size()) + " points");
}

bool GridFunction::has_support() const noexcept {
    return std::any_of(values_.begin(), values_.end(), [](const auto& v) { return !v.is_bottom(); });
}

Kernel::Kernel(GridShape x_grid, GridShape y_grid, std::vector<ExtendedScalar> values, SemiringSpec spec)
    : x_grid_(x_grid), y_grid_(y_grid), values_(std::move(values)), spec_(spec) {
    x_grid_.validate();
    y_grid_.validate();
    if (values_.size() != x_grid_.size() * y_grid_.size())
        throw Error(ErrorKind::GridMismatch, "kernel value count does not match X x Y");
}

Kernel Kernel::from_grid(const GridFunction& k) {
    const auto& g = k.shape();
    if (g.dim != 2)
        throw Error(ErrorKind::GridMismatch, "a kernel file must be a 2-D grid");
    return Kernel(GridShape::line(g.origin[0], g.step[0], g.extent[0]),
                  GridShape::line(g.origin[1], g.step[1], g.extent[1]), k.values(), k.spec());
}

ExtendedScalar idempotent_integral(const GridFunction& phi) {
    if (!phi.has_support())
        throw Error(ErrorKind::EmptyDomain, "integral of a function that is zero everywhere");
    ExtendedScalar acc = zero(phi.spec());
    for (const auto& v : phi.values())
        acc = add(acc, v, phi.spec());
    return acc;
}

ExtendedScalar measure_integral(const GridFunction& phi, const GridFunction& psi) {
    require_same_grid(phi, psi);
    const auto& s = phi.spec();
    ExtendedScalar acc = zero(s);
    for (std::size_t i = 0; i < phi.values().size(); ++i)
        acc = add(acc, mul(phi[i], psi[i], s), s);
    return acc;
}

ExtendedScalar scalar_product(const GridFunction& phi, const GridFunction& psi) {
    return measure_integral(phi, psi);
}

GridFunction sup_convolution(const GridFunction& phi, const GridFunction& psi) {
    const auto& a = phi.shape();
    const auto& b = psi.shape();
    if (a.dim != b.dim)
        throw Error(ErrorKind::StepMismatch, "convolution of grids of different dimension");
    if (phi.spec() != psi.spec())
        throw Error(ErrorKind::SpecMismatch, phi.spec().name() + " vs " + psi.spec().name());
    for (std::size_t ax = 0; ax < static_cast<std::size_t>(a.dim); ++ax)
        if (a.step[ax] != b.step[ax])
            throw Error(ErrorKind::StepMismatch,
                        "steps " + format_double(a.step[ax]) + " and " + format_double(b.step[ax]) + " differ");
    const auto& s = phi.spec();
    GridShape out_shape = a;
    for (std::size_t ax = 0; ax < static_cast<std::size_t>(a.dim); ++ax) {
        out_shape.origin[ax] = a.origin[ax] + b.origin[ax];
        out_shape.extent[ax] = a.extent[ax] + b.extent[ax] - 1;
    }
    GridFunction out(out_shape, s);
    if (a.dim == 1) {
        for (std::size_t i = 0; i < a.extent[0]; ++i) {
            if (phi[i].is_bottom())
                continue;
            for (std::size_t j = 0; j < b.extent[0]; ++j)
                out[i + j] = add(out[i + j], mul(phi[i], psi[j], s), s);
        }
        return out;
    }
    for (std::size_t i0 = 0; i0 < a.extent[0]; ++i0)
        for (std::size_t i1 = 0; i1 < a.extent[1]; ++i1) {
            const auto& p = phi.at(i0, i1);
            if (p.is_bottom())
                continue;
            for (std::size_t j0 = 0; j0 < b.extent[0]; ++j0)
                for (std::size_t j1 = 0; j1 < b.extent[1]; ++j1) {
                    auto& slot = out[out_shape.flat_index(i0 + j0, i1 + j1)];
                    slot = add(slot, mul(p, psi.at(j0, j1), s), s);
                }
        }
    return out;
}

GridFunction legendre_brute_force(const GridFunction& phi, const GridShape& xi_grid) {
    require_max_plus(phi.spec(), "legendre_transform");
    xi_grid.validate();
    if (xi_grid.dim != phi.shape().dim)
        throw Error(ErrorKind::GridMismatch, "slope grid dimension differs from the function's");
    if (!phi.has_support())
        throw Error(ErrorKind::EmptyDomain, "transform of a function that is zero everywhere");
    const auto& s = phi.spec();
    std::vector<ExtendedScalar> out(xi_grid.size(), zero(s));
    for (std::size_t k = 0; k < out.size(); ++k)
        for (std::size_t i = 0; i < phi.values().size(); ++i) {
            if (phi[i].is_bottom())
                continue;
            out[k] = add(out[k], mul(ExtendedScalar(dot_at(phi.shape(), i, xi_grid, k)), phi[i], s), s);
        }
    return GridFunction(xi_grid, std::move(out), s);
}

bool is_discretely_concave(const GridFunction& phi) {
    if (phi.shape().dim != 1)
        return false;
    const auto run = finite_run(phi);
    if (!run)
        return false;
    for (std::size_t i = run->first + 1; i < run->last; ++i) {
        const double second = (phi[i - 1].value() - phi[i].value()) - (phi[i].value() - phi[i + 1].value());
        if (second > 0.0)
            return false;
    }
    return true;
}

GridFunction legendre_transform(const GridFunction& phi, const GridShape& xi_grid, LegendreMethod method) {
    require_max_plus(phi.spec(), "legendre_transform");
    xi_grid.validate();
    if (method == LegendreMethod::BruteForce)
        return legendre_brute_force(phi, xi_grid);
    const bool concave = xi_grid.dim == 1 && is_discretely_concave(phi);
    if (!concave) {
        if (method == LegendreMethod::Fast)
            throw Error(ErrorKind::InvalidArgument, "fast Legendre transform needs a concave 1-D function");
        return legendre_brute_force(phi, xi_grid);
    }
    return legendre_fast(phi, xi_grid, *finite_run(phi));
}

std::array<double, 2> suggest_slope_range(const GridFunction& phi) {
    if (phi.shape().dim != 1)
        throw Error(ErrorKind::InvalidArgument, "slope range is defined for 1-D functions");
    const auto& g = phi.shape();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool any = false;
    for (std::size_t i = 0; i + 1 < g.extent[0]; ++i) {
        if (!phi[i].is_finite() || !phi[i + 1].is_finite())
            continue;
        const double slope = (phi[i + 1].value() - phi[i].value()) / g.step[0];
        lo = std::min(lo, slope);
        hi = std::max(hi, slope);
        any = true;
    }
    if (!any)
        return {0.0, 0.0};
    return {-hi, -lo};
}

GridFunction least_concave_majorant(const GridFunction& phi) {
    if (phi.shape().dim != 1)
        throw Error(ErrorKind::InvalidArgument, "concave majorant is defined for 1-D functions");
    const auto& g = phi.shape();
    std::vector<std::size_t> hull;
    auto x = [&](std::size_t i) { return g.coordinate(0, i); };
    auto y = [&](std::size_t i) { return phi[i].value(); };
    for (std::size_t i = 0; i < g.extent[0]; ++i) {
        if (phi[i].is_top())
            throw Error(ErrorKind::InvalidArgument, "majorant of a function with top values");
        if (!phi[i].is_finite())
            continue;
        // Upper hull: drop the middle point while it lies on or below the chord.
        while (hull.size() >= 2) {
            const auto a = hull[hull.size() - 2];
            const auto b = hull.back();
            const double cross = (x(b) - x(a)) * (y(i) - y(a)) - (y(b) - y(a)) * (x(i) - x(a));
            if (cross < 0.0)
                break;
            hull.pop_back();
        }
        hull.push_back(i);
    }
    if (hull.empty())
        throw Error(ErrorKind::EmptyDomain, "majorant of a function that is zero everywhere");
    GridFunction out(g, phi.spec());
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const auto a = hull[h];
        const auto b = hull[h + 1];
        for (std::size_t i = a; i < b; ++i) {
            const double t = static_cast<double>(i - a) / static_cast<double>(b - a);
            out[i] = y(a) + t * (y(b) - y(a));
        }
    }
    out[hull.back()] = y(hull.back());
    return out;
}

GridFunction legendre_biconjugate(const GridFunction& transform, const GridShape& x_grid) {
    if (transform.shape().dim != 1 || x_grid.dim != 1)
        throw Error(ErrorKind::InvalidArgument, "biconjugate is implemented for 1-D grids");
    x_grid.validate();
    const auto& xi = transform.shape();
    std::vector<ExtendedScalar> out(x_grid.size());
    for (std::size_t i = 0; i < x_grid.extent[0]; ++i) {
        const double x = x_grid.coordinate(0, i);
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < xi.extent[0]; ++k) {
            if (!transform[k].is_finite())
                continue;
            best = std::min(best, transform[k].value() - x * xi.coordinate(0, k));
        }
        out[i] = std::isfinite(best) ? ExtendedScalar(best) : ExtendedScalar::bottom();
    }
    return GridFunction(x_grid, std::move(out), transform.spec());
}

GridFunction apply_kernel(const Kernel& k, const GridFunction& phi) {
    if (!(k.x_grid() == phi.shape()))
        throw Error(ErrorKind::GridMismatch, "kernel X grid differs from the function grid");
    if (k.spec() != phi.spec())
        throw Error(ErrorKind::SpecMismatch, k.spec().name() + " vs " + phi.spec().name());
    const auto& s = phi.spec();
    const std::size_t nx = k.x_grid().size();
    const std::size_t ny = k.y_grid().size();
    GridFunction out(k.y_grid(), s);
    for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t x = 0; x < nx; ++x)
            out[y] = add(out[y], mul(k(x, y), phi[x], s), s);
    return out;
}

} // namespace tropic
