#include "tropic/fractal.hpp"

#include "tropic/error.hpp"
#include "tropic/format.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace tropic {

namespace {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

} // namespace

void PointCloud::validate() const {
    if (dim < 1 || dim > 3)
        throw Error(ErrorKind::InvalidArgument, "point clouds have dimension 1-3");
    if (points.empty())
        throw Error(ErrorKind::InvalidArgument, "empty point cloud");
    for (const auto& p : points) {
        if (p.size() != static_cast<std::size_t>(dim))
            throw Error(ErrorKind::InvalidArgument, "point of the wrong dimension");
        for (double c : p)
            if (!std::isfinite(c))
                throw Error(ErrorKind::InvalidArgument, "non-finite coordinate");
    }
}

std::size_t box_count(const PointCloud& s, double rho) {
    s.validate();
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw Error(ErrorKind::InvalidArgument, "box radius must be positive, got " + format_double(rho));
    const double side = 2.0 * rho;
    std::vector<std::array<long long, 3>> cells;
    cells.reserve(s.points.size());
    for (const auto& p : s.points) {
        std::array<long long, 3> c{0, 0, 0};
        for (std::size_t a = 0; a < p.size(); ++a)
            c[a] = static_cast<long long>(std::floor(p[a] / side));
        cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end());
    return static_cast<std::size_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
}

std::pair<double, ScaleSweep> hb_dimension(const PointCloud& s, const std::vector<double>& scales) {
    if (scales.size() < 3)
        throw Error(ErrorKind::DegenerateScales, "at least three scales are needed, got " +
                                                     std::to_string(scales.size()));
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0))
            throw Error(ErrorKind::DegenerateScales, "scales must be positive");
        if (i > 0 && !(scales[i] < scales[i - 1]))
            throw Error(ErrorKind::DegenerateScales, "scales must be strictly decreasing");
    }
    ScaleSweep sweep;
    sweep.scales = scales;
    for (double rho : scales) {
        const auto count = box_count(s, rho);
        const double lx = std::log(1.0 / rho);
        const double ly = std::log(static_cast<double>(count));
        sweep.counts.push_back(count);
        sweep.log_inv_scales.push_back(lx);
        sweep.log_counts.push_back(ly);
        sweep.ratios.push_back(lx != 0.0 ? ly / lx : std::numeric_limits<double>::quiet_NaN());
    }
    sweep.slope = least_squares_slope(sweep.log_inv_scales, sweep.log_counts);
    return {sweep.slope, std::move(sweep)};
}

double pointwise_measure_dimension(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2)
        throw Error(ErrorKind::DegenerateScales, "at least two (rho, mu) samples are needed");
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto [rho, mu] = samples[i];
        if (!(rho > 0.0) || !(mu > 0.0))
            throw Error(ErrorKind::InvalidArgument, "radii and measures must be positive");
        if (i > 0) {
            if (!(rho < samples[i - 1].first))
                throw Error(ErrorKind::DegenerateScales, "radii must be strictly decreasing");
            if (mu > samples[i - 1].second)
                throw Error(ErrorKind::NonmonotoneMeasure,
                            "mu grows from " + format_double(samples[i - 1].second) + " to " + format_double(mu) +
                                " as rho shrinks to " + format_double(rho));
        }
        x.push_back(std::log(1.0 / rho));
        y.push_back(-std::log(mu));
    }
    return least_squares_slope(x, y);
}

double ball_volume(double d, double rho) {
    return std::pow(std::tgamma(0.5), d) / std::tgamma(1.0 + d / 2.0) * std::pow(rho, d);
}

PointCloud cantor_sample(int depth) {
    if (depth < 0 || depth > 24)
        throw Error(ErrorKind::InvalidArgument, "Cantor depth must be in 0..24");
    std::vector<double> left{0.0};
    double width = 1.0;
    for (int k = 0; k < depth; ++k) {
        width /= 3.0;
        std::vector<double> next;
        next.reserve(left.size() * 2);
        for (double a : left) {
            next.push_back(a);
            next.push_back(a + 2.0 * width);
        }
        left = std::move(next);
    }
    PointCloud cloud;
    cloud.dim = 1;
    for (double a : left)
        cloud.points.push_back({a + width / 2.0});
    return cloud;
}

PointCloud product(const PointCloud& a, const PointCloud& b) {
    a.validate();
    b.validate();
    if (a.dim + b.dim > 3)
        throw Error(ErrorKind::DimensionUnsupported, "product would exceed three dimensions");
    PointCloud out;
    out.dim = a.dim + b.dim;
    out.points.reserve(a.points.size() * b.points.size());
    for (const auto& p : a.points)
        for (const auto& q : b.points) {
            auto r = p;
            r.insert(r.end(), q.begin(), q.end());
            out.points.push_back(std::move(r));
        }
    return out;
}

} // namespace tropic
