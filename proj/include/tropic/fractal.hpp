#pragma once

/**
 * @file fractal.hpp
 * @brief Box-counting estimates of the Hausdorff-Besicovich dimension
 * D(S) = lim inf_{rho -> 0} log N_rho(S) / log(1/rho), and pointwise measure
 * dimension D_{x,mu} = lim inf -log mu(B(x, rho)) / log(1/rho).
 *
 * N_rho counts occupied cells of the lattice of cubes of side 2 rho anchored at
 * the origin. The limit is estimated by the least-squares slope over the given
 * scales; the per-scale ratios are returned as well.
 */

#include <cstddef>
#include <utility>
#include <vector>

namespace tropic {

struct PointCloud {
    int dim = 1;
    std::vector<std::vector<double>> points;

    /// Throws InvalidArgument for an empty cloud, a dimension outside 1..3 or
    /// points of the wrong size.
    void validate() const;
};

struct ScaleSweep {
    std::vector<double> scales;          // rho, strictly decreasing
    std::vector<std::size_t> counts;     // N_rho
    std::vector<double> log_inv_scales;  // log(1/rho)
    std::vector<double> log_counts;      // log N_rho
    std::vector<double> ratios;          // log N_rho / log(1/rho), NaN when rho == 1
    double slope = 0.0;
};

std::size_t box_count(const PointCloud& s, double rho);

/// Least-squares slope of log N_rho against log(1/rho). Throws DegenerateScales
/// for fewer than three scales or scales that are not strictly decreasing.
std::pair<double, ScaleSweep> hb_dimension(const PointCloud& s, const std::vector<double>& scales);

/// Slope of -log mu against log(1/rho) for samples (rho, mu) ordered by
/// decreasing rho. Throws NonmonotoneMeasure if mu grows as rho shrinks.
double pointwise_measure_dimension(const std::vector<std::pair<double, double>>& samples);

/// Volume of the d-ball of radius rho for real d: Gamma(1/2)^d / Gamma(1 + d/2) rho^d.
double ball_volume(double d, double rho);

/// Midpoints of the 2^depth intervals of the middle-thirds Cantor construction on [0, 1].
PointCloud cantor_sample(int depth);

/// Cartesian product of two clouds.
PointCloud product(const PointCloud& a, const PointCloud& b);

} // namespace tropic
