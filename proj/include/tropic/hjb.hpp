#pragma once

/**
 * @file hjb.hpp
 * @brief Hamilton-Jacobi evolution for H(p, x) = p^2/2m + V(x) in one space
 * dimension, in two pictures:
 *
 *  - min-plus (Hopf-Lax): S'(x) = min_y [S(y) + m (x-y)^2 / (2 dt)] - dt V(x),
 *    an integral operator over R_min and therefore min-plus linear;
 *  - viscous: h u_t = (h^2/2m) u_xx + V u, linear in the usual sense. With
 *    S = h ln u it becomes S_t = V + S_x^2/2m + (h/2m) S_xx; with S = -h ln u
 *    it is the viscous regularization of S_t + S_x^2/2m + V = 0, which the
 *    Hopf-Lax evolution solves. The h -> 0 comparison uses the second reading.
 */

#include "tropic/calculus.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tropic {

struct HJProblem {
    double mass = 1.0;
    GridFunction potential;
    GridFunction initial;

    /// Samples V and S0 on a 1-D grid. Throws InvalidArgument if mass <= 0.
    static HJProblem on_grid(const GridShape& grid, double mass, const std::function<double(double)>& initial,
                             const std::function<double(double)>& potential);

    const GridShape& grid() const noexcept { return initial.shape(); }
    void validate() const;
};

struct HopfLaxResult {
    GridFunction value;
    std::vector<std::size_t> argmin;  // minimizing y index for each x
    std::vector<bool> interior;       // argmin strictly inside the grid
};

/// One Hopf-Lax step with potential splitting (MinPlus values).
GridFunction hopf_lax_step(const GridFunction& s, double dt, const HJProblem& prob);
HopfLaxResult hopf_lax_step_detailed(const GridFunction& s, double dt, const HJProblem& prob);

struct SuperpositionReport {
    double max_deviation = 0.0;
    std::size_t worst_index = 0;
};

/// Compares step(min(l1 + S1, l2 + S2)) with min(l1 + step(S1), l2 + step(S2)).
/// Throws LinearityViolation when a gridpoint differs by more than `tolerance`.
SuperpositionReport superposition_check(const GridFunction& s1, const GridFunction& s2, double lambda1,
                                        double lambda2, double dt, const HJProblem& prob, double tolerance = 0.0);

/// One explicit step of h u_t = (h^2/2m) u_xx + V u. Boundary nodes see a zero
/// second difference. Throws StabilityViolation if dt > m step^2 / h and
/// NonpositiveU if u has a nonpositive value.
GridFunction viscous_step(const GridFunction& u, double dt, double h, const HJProblem& prob);

struct ColeHopfReport {
    double max_residual = 0.0;
    std::size_t worst_index = 0;
};

/// Residual of S_t = V + S_x^2/2m + (h/2m) S_xx for S = h ln u, S_t = h u_t / u,
/// with central differences at interior points.
ColeHopfReport cole_hopf_residual(const GridFunction& u, const GridFunction& du_dt, double h,
                                  const HJProblem& prob);

struct ConvergenceReport {
    GridFunction hopf_lax;                // S(., T)
    std::vector<bool> interior;           // points entering the gap
    std::vector<double> h;
    std::vector<double> gap;              // sup over interior of |S_h - S|
    std::vector<GridFunction> viscous;    // S_h(., T) = -h ln u
    bool decreasing = false;              // gap[k+1] <= 1.1 gap[k]
};

/// Evolves S0 to time T by Hopf-Lax steps of size <= dt and, for each h, the
/// viscous equation from u0 = exp(-S0/h) with stable substeps.
ConvergenceReport dequantization_convergence(const HJProblem& prob, double t_final, double dt,
                                             std::span<const double> h_sequence);

} // namespace tropic
