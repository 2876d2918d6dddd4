#include "tropic/hjb.hpp"

#include "tropic/error.hpp"
#include "tropic/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tropic {

namespace {

const SemiringSpec kMinPlus = SemiringSpec::min_plus();

void require_on_grid(const GridFunction& f, const HJProblem& prob, const char* what) {
    if (!(f.shape() == prob.grid()))
        throw Error(ErrorKind::GridMismatch, std::string(what) + " is not on the problem grid");
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be positive, got " + format_double(v));
}

std::vector<double> positive_values(const GridFunction& u) {
    std::vector<double> out(u.values().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!u[i].is_finite() || !(u[i].value() > 0.0))
            throw Error(ErrorKind::NonpositiveU, "u must be positive, fails at index " + std::to_string(i));
        out[i] = u[i].value();
    }
    return out;
}

GridFunction real_grid(const GridShape& g, const std::vector<double>& v) {
    std::vector<ExtendedScalar> vals(v.begin(), v.end());
    return GridFunction(g, std::move(vals), SemiringSpec::max_plus());
}

} // namespace

HJProblem HJProblem::on_grid(const GridShape& grid, double mass, const std::function<double(double)>& initial,
                             const std::function<double(double)>& potential) {
    HJProblem p{mass, GridFunction::sample(grid, potential, kMinPlus), GridFunction::sample(grid, initial, kMinPlus)};
    p.validate();
    return p;
}

void HJProblem::validate() const {
    require_positive(mass, "mass");
    if (initial.shape().dim != 1)
        throw Error(ErrorKind::InvalidArgument, "Hamilton-Jacobi problems are one-dimensional");
    if (!(potential.shape() == initial.shape()))
        throw Error(ErrorKind::GridMismatch, "potential and initial action live on different grids");
    for (const auto& v : potential.values())
        if (!v.is_finite())
            throw Error(ErrorKind::InvalidArgument, "potential must be finite");
}

HopfLaxResult hopf_lax_step_detailed(const GridFunction& s, double dt, const HJProblem& prob) {
    prob.validate();
    require_positive(dt, "dt");
    require_on_grid(s, prob, "S");
    const auto& g = prob.grid();
    const std::size_t n = g.extent[0];
    const double scale = prob.mass / (2.0 * dt);
    HopfLaxResult out{GridFunction(g, kMinPlus), std::vector<std::size_t>(n, 0), std::vector<bool>(n, false)};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.coordinate(0, i);
        ExtendedScalar best = zero(kMinPlus);
        std::size_t arg = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = x - g.coordinate(0, j);
            const auto candidate = mul(s[j], ExtendedScalar(scale * d * d), kMinPlus);
            const auto merged = add(best, candidate, kMinPlus);
            if (!(merged == best)) {
                best = merged;
                arg = j;
            }
        }
        out.value[i] = mul(best, ExtendedScalar(-dt * prob.potential[i].value()), kMinPlus);
        out.argmin[i] = arg;
        out.interior[i] = arg > 0 && arg + 1 < n;
    }
    return out;
}

GridFunction hopf_lax_step(const GridFunction& s, double dt, const HJProblem& prob) {
    return hopf_lax_step_detailed(s, dt, prob).value;
}

SuperpositionReport superposition_check(const GridFunction& s1, const GridFunction& s2, double lambda1,
                                        double lambda2, double dt, const HJProblem& prob, double tolerance) {
    require_on_grid(s1, prob, "S1");
    require_on_grid(s2, prob, "S2");
    const auto& g = prob.grid();
    const ExtendedScalar l1(lambda1);
    const ExtendedScalar l2(lambda2);
    GridFunction combined(g, kMinPlus);
    for (std::size_t i = 0; i < g.size(); ++i)
        combined[i] = add(mul(l1, s1[i], kMinPlus), mul(l2, s2[i], kMinPlus), kMinPlus);
    const auto lhs = hopf_lax_step(combined, dt, prob);
    const auto t1 = hopf_lax_step(s1, dt, prob);
    const auto t2 = hopf_lax_step(s2, dt, prob);
    SuperpositionReport report;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto rhs = add(mul(l1, t1[i], kMinPlus), mul(l2, t2[i], kMinPlus), kMinPlus);
        double dev = 0.0;
        if (lhs[i].is_finite() && rhs.is_finite())
            dev = std::abs(lhs[i].value() - rhs.value());
        else if (!(lhs[i] == rhs))
            dev = std::numeric_limits<double>::infinity();
        if (dev > report.max_deviation) {
            report.max_deviation = dev;
            report.worst_index = i;
        }
    }
    if (report.max_deviation > tolerance)
        throw Error(ErrorKind::LinearityViolation,
                    "deviation " + format_double(report.max_deviation) + " at gridpoint " +
                        std::to_string(report.worst_index));
    return report;
}

GridFunction viscous_step(const GridFunction& u, double dt, double h, const HJProblem& prob) {
    prob.validate();
    require_positive(dt, "dt");
    require_positive(h, "h");
    require_on_grid(u, prob, "u");
    const auto& g = prob.grid();
    const double step = g.step[0];
    const double limit = prob.mass * step * step / h;
    if (dt > limit)
        throw Error(ErrorKind::StabilityViolation,
                    "dt = " + format_double(dt) + " exceeds m step^2 / h = " + format_double(limit));
    const auto v = positive_values(u);
    const std::size_t n = v.size();
    const double diffusion = h / (2.0 * prob.mass) / (step * step);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lap = (i == 0 || i + 1 == n) ? 0.0 : (v[i - 1] - 2.0 * v[i] + v[i + 1]);
        out[i] = v[i] + dt * (diffusion * lap + prob.potential[i].value() * v[i] / h);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!(out[i] > 0.0))
            throw Error(ErrorKind::NonpositiveU, "step produced a nonpositive value at index " + std::to_string(i));
    return real_grid(g, out);
}

ColeHopfReport cole_hopf_residual(const GridFunction& u, const GridFunction& du_dt, double h,
                                  const HJProblem& prob) {
    prob.validate();
    require_positive(h, "h");
    require_on_grid(u, prob, "u");
    require_on_grid(du_dt, prob, "du/dt");
    const auto v = positive_values(u);
    const std::size_t n = v.size();
    const double step = prob.grid().step[0];
    const double m = prob.mass;
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = h * std::log(v[i]);
    ColeHopfReport report;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double s_t = h * du_dt[i].value() / v[i];
        const double s_x = (s[i + 1] - s[i - 1]) / (2.0 * step);
        const double s_xx = (s[i + 1] - 2.0 * s[i] + s[i - 1]) / (step * step);
        const double rhs = prob.potential[i].value() + s_x * s_x / (2.0 * m) + h / (2.0 * m) * s_xx;
        const double r = std::abs(s_t - rhs);
        if (r > report.max_residual) {
            report.max_residual = r;
            report.worst_index = i;
        }
    }
    return report;
}

ConvergenceReport dequantization_convergence(const HJProblem& prob, double t_final, double dt,
                                             std::span<const double> h_sequence) {
    prob.validate();
    require_positive(t_final, "T");
    require_positive(dt, "dt");
    const auto& g = prob.grid();
    const std::size_t n = g.extent[0];

    const auto hl_steps = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-12));
    const double hl_dt = t_final / static_cast<double>(hl_steps);
    GridFunction s = prob.initial;
    std::vector<bool> interior(n, true);
    for (std::size_t k = 0; k < hl_steps; ++k) {
        auto r = hopf_lax_step_detailed(s, hl_dt, prob);
        for (std::size_t i = 0; i < n; ++i)
            interior[i] = interior[i] && r.interior[i];
        s = std::move(r.value);
    }
    // The viscous boundary closure is trusted only away from the ends.
    for (std::size_t i = 0; i < n; ++i)
        if (i < n / 4 || i > n - 1 - n / 4)
            interior[i] = false;

    ConvergenceReport report{s, interior, {}, {}, {}, true};
    double s0_min = std::numeric_limits<double>::infinity();
    for (const auto& v : prob.initial.values())
        s0_min = std::min(s0_min, v.value());

    const double step = g.step[0];
    for (double h : h_sequence) {
        require_positive(h, "h");
        const double stable = 0.5 * prob.mass * step * step / h;
        const auto substeps = static_cast<std::size_t>(std::ceil(t_final / stable));
        const double vdt = t_final / static_cast<double>(substeps);
        // u = exp(-S0/h) stored as u_scaled * exp(log_scale).
        std::vector<ExtendedScalar> u0(n);
        for (std::size_t i = 0; i < n; ++i)
            u0[i] = std::exp(-(prob.initial[i].value() - s0_min) / h);
        GridFunction u(g, std::move(u0), SemiringSpec::max_plus());
        double log_scale = -s0_min / h;
        for (std::size_t k = 0; k < substeps; ++k) {
            u = viscous_step(u, vdt, h, prob);
            double peak = 0.0;
            for (const auto& v : u.values())
                peak = std::max(peak, v.value());
            for (std::size_t i = 0; i < n; ++i)
                u[i] = u[i].value() / peak;
            log_scale += std::log(peak);
        }
        GridFunction s_h(g, kMinPlus);
        double gap = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s_h[i] = -h * (std::log(u[i].value()) + log_scale);
            if (interior[i])
                gap = std::max(gap, std::abs(s_h[i].value() - s[i].value()));
        }
        if (!report.gap.empty() && gap > 1.1 * report.gap.back())
            report.decreasing = false;
        report.h.push_back(h);
        report.gap.push_back(gap);
        report.viscous.push_back(std::move(s_h));
    }
    return report;
}

} // namespace tropic
