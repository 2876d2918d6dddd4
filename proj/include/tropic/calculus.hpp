#pragma once

/**
 * @file calculus.hpp
 * @brief Idempotent integration, sup-convolution, the Legendre transform and
 * integral operators with kernels, all on uniform grids.
 *
 * On a grid every integral is a finite (+)-reduction:
 *
 *   I(phi)          = (+)_x phi(x)
 *   <phi, psi>      = (+)_x phi(x) (x) psi(x)
 *   (phi * psi)(g)  = (+)_{x+y=g} phi(x) (x) psi(y)
 *   phi~(xi)        = sup_x (xi . x + phi(x))
 *   (K phi)(y)      = (+)_x K(x, y) (x) phi(x)
 *
 * The Legendre transform here uses +phi, so phi~ is the classical convex
 * conjugate of -phi.
 */

#include "tropic/semiring.hpp"

#include <array>
#include <cstddef>
#include <type_traits>
#include <vector>

namespace tropic {

/// Uniform 1-D or 2-D lattice: coordinate k on axis a is origin[a] + k * step[a].
struct GridShape {
    int dim = 1;
    std::array<double, 2> origin{0.0, 0.0};
    std::array<double, 2> step{1.0, 1.0};
    std::array<std::size_t, 2> extent{0, 1};

    static GridShape line(double origin, double step, std::size_t count);
    static GridShape plane(std::array<double, 2> origin, std::array<double, 2> step,
                           std::array<std::size_t, 2> extent);

    /// Throws InvalidArgument on a bad dimension, step or empty extent.
    void validate() const;

    std::size_t size() const noexcept { return dim == 1 ? extent[0] : extent[0] * extent[1]; }
    double coordinate(int axis, std::size_t k) const noexcept {
        return origin[static_cast<std::size_t>(axis)] + static_cast<double>(k) * step[static_cast<std::size_t>(axis)];
    }
    /// Row-major: axis 0 varies slowest.
    std::size_t flat_index(std::size_t i, std::size_t j = 0) const noexcept {
        return dim == 1 ? i : i * extent[1] + j;
    }

    bool operator==(const GridShape& other) const noexcept;
};

class GridFunction {
public:
    /// All-zero (bottom) function on `shape`.
    GridFunction(GridShape shape, SemiringSpec spec);
    GridFunction(GridShape shape, std::vector<ExtendedScalar> values, SemiringSpec spec);

    /// Samples f at every gridpoint; f takes one coordinate per axis.
    template <class F>
    static GridFunction sample(const GridShape& shape, F&& f, SemiringSpec spec = SemiringSpec::max_plus()) {
        std::vector<ExtendedScalar> values;
        values.reserve(shape.size());
        for (std::size_t i = 0; i < shape.extent[0]; ++i) {
            if constexpr (std::is_invocable_v<F&, double>) {
                values.emplace_back(f(shape.coordinate(0, i)));
            } else {
                for (std::size_t j = 0; j < shape.extent[1]; ++j)
                    values.emplace_back(f(shape.coordinate(0, i), shape.coordinate(1, j)));
            }
        }
        return GridFunction(shape, std::move(values), spec);
    }

    const GridShape& shape() const noexcept { return shape_; }
    const SemiringSpec& spec() const noexcept { return spec_; }
    const std::vector<ExtendedScalar>& values() const noexcept { return values_; }

    const ExtendedScalar& operator[](std::size_t flat) const { return values_[flat]; }
    ExtendedScalar& operator[](std::size_t flat) { return values_[flat]; }
    const ExtendedScalar& at(std::size_t i, std::size_t j = 0) const { return values_[shape_.flat_index(i, j)]; }

    /// True when at least one value is not bottom.
    bool has_support() const noexcept;

    bool operator==(const GridFunction&) const = default;

private:
    GridShape shape_;
    std::vector<ExtendedScalar> values_;
    SemiringSpec spec_;
};

/// Finite kernel K(x, y) on X x Y, stored with x varying slowest.
class Kernel {
public:
    Kernel(GridShape x_grid, GridShape y_grid, std::vector<ExtendedScalar> values, SemiringSpec spec);

    /// A 2-D grid function read as a kernel: axis 0 is X, axis 1 is Y.
    static Kernel from_grid(const GridFunction& k);

    const GridShape& x_grid() const noexcept { return x_grid_; }
    const GridShape& y_grid() const noexcept { return y_grid_; }
    const SemiringSpec& spec() const noexcept { return spec_; }
    const ExtendedScalar& operator()(std::size_t x, std::size_t y) const {
        return values_[x * y_grid_.size() + y];
    }

private:
    GridShape x_grid_;
    GridShape y_grid_;
    std::vector<ExtendedScalar> values_;
    SemiringSpec spec_;
};

/// (+)-reduction of all values. Throws EmptyDomain if every value is bottom.
ExtendedScalar idempotent_integral(const GridFunction& phi);

/// (+)_x phi(x) (x) psi(x). Throws GridMismatch.
ExtendedScalar measure_integral(const GridFunction& phi, const GridFunction& psi);

/// Same reduction as measure_integral, under its inner-product name.
ExtendedScalar scalar_product(const GridFunction& phi, const GridFunction& psi);

/// Result lives on the Minkowski sum of the two lattices. Throws StepMismatch.
GridFunction sup_convolution(const GridFunction& phi, const GridFunction& psi);

enum class LegendreMethod { Auto, BruteForce, Fast };

/// phi~(xi) = sup_x (xi . x + phi(x)) sampled on `xi_grid` (MaxPlus only).
/// Auto uses the linear-time sweep when phi is 1-D and discretely concave and
/// the brute-force scan otherwise; Fast throws InvalidArgument if phi is not concave.
GridFunction legendre_transform(const GridFunction& phi, const GridShape& xi_grid,
                                LegendreMethod method = LegendreMethod::Auto);

/// O(N M) scan over all pairs.
GridFunction legendre_brute_force(const GridFunction& phi, const GridShape& xi_grid);

/// Concavity of the finite values of a 1-D function whose support is one
/// contiguous run (second differences <= 0).
bool is_discretely_concave(const GridFunction& phi);

/// Slope interval [lo, hi] of xi for which the transform sees every finite
/// difference of phi: lo = -max slope, hi = -min slope (1-D).
std::array<double, 2> suggest_slope_range(const GridFunction& phi);

/// Least concave majorant of the finite values of a 1-D function, evaluated at
/// the gridpoints between its first and last finite sample.
GridFunction least_concave_majorant(const GridFunction& phi);

/// inf_xi (phi~(xi) - x . xi) evaluated on phi's own grid (1-D).
GridFunction legendre_biconjugate(const GridFunction& transform, const GridShape& x_grid);

/// (K phi)(y) = (+)_x K(x, y) (x) phi(x). Throws GridMismatch.
GridFunction apply_kernel(const Kernel& k, const GridFunction& phi);

} // namespace tropic
