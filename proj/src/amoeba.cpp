#include "tropic/amoeba.hpp"

#include "tropic/error.hpp"
#include "tropic/format.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace tropic {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRootResidual = 1e-9;

bool is_integer(double v) { return std::isfinite(v) && v == std::round(v); }

Complex int_power(const Complex& z, long long k) {
    return std::polar(std::pow(std::abs(z), static_cast<double>(k)), static_cast<double>(k) * std::arg(z));
}

// p(y) = sum c[j] y^j. Returns |p(y)| / sum |c[j] y^j|.
double relative_residual(const std::vector<Complex>& c, const Complex& y) {
    Complex value(0.0, 0.0);
    double scale = 0.0;
    Complex power(1.0, 0.0);
    for (const auto& cj : c) {
        value += cj * power;
        scale += std::abs(cj * power);
        power *= y;
    }
    return scale > 0.0 ? std::abs(value) / scale : 0.0;
}

void newton_polish(const std::vector<Complex>& c, Complex& y) {
    for (int it = 0; it < 4; ++it) {
        Complex p(0.0, 0.0);
        Complex dp(0.0, 0.0);
        for (std::size_t j = c.size(); j-- > 0;) {
            dp = dp * y + p;
            p = p * y + c[j];
        }
        if (dp == Complex(0.0, 0.0))
            return;
        const Complex next = y - p / dp;
        if (!(relative_residual(c, next) < relative_residual(c, y)))
            return;
        y = next;
    }
}

// Nonzero roots of sum c[j] y^j, coefficients ordered by ascending power.
std::vector<Complex> nonzero_roots(std::vector<Complex> c) {
    while (!c.empty() && c.back() == Complex(0.0, 0.0))
        c.pop_back();
    std::size_t low = 0;
    while (low < c.size() && c[low] == Complex(0.0, 0.0))
        ++low;
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
    if (c.size() < 2)
        return {};
    const std::size_t d = c.size() - 1;
    if (d == 1)
        return {-c[0] / c[1]};
    // y = sigma z balances the outer coefficients before forming the companion.
    const double sigma = std::pow(std::abs(c[0]) / std::abs(c[d]), 1.0 / static_cast<double>(d));
    std::vector<Complex> scaled(c.size());
    double power = 1.0;
    for (std::size_t j = 0; j <= d; ++j) {
        scaled[j] = c[j] * power;
        power *= sigma;
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i)
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -scaled[i] / scaled[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<Complex> roots;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        Complex y = solver.eigenvalues()(i) * sigma;
        newton_polish(c, y);
        roots.push_back(y);
    }
    return roots;
}

struct IntTerm {
    double coeff;
    long long i;
    long long j;
};

std::vector<IntTerm> int_terms(const PlaneCurve& f) {
    std::vector<IntTerm> out;
    for (const auto& t : f.polynomial().terms())
        out.push_back({t.coeff.real(), std::llround(t.exponent[0]), std::llround(t.exponent[1])});
    return out;
}

// Coefficients in the free variable after fixing the other one to `fixed`.
// `swap` selects which variable is fixed (false: x fixed, solve for y).
std::vector<Complex> column_polynomial(const std::vector<IntTerm>& terms, const Complex& fixed, bool swap) {
    long long lo = 0;
    long long hi = 0;
    bool first = true;
    for (const auto& t : terms) {
        const long long e = swap ? t.i : t.j;
        lo = first ? e : std::min(lo, e);
        hi = first ? e : std::max(hi, e);
        first = false;
    }
    std::vector<Complex> c(static_cast<std::size_t>(hi - lo + 1), Complex(0.0, 0.0));
    for (const auto& t : terms) {
        const long long free_exp = swap ? t.i : t.j;
        const long long fixed_exp = swap ? t.j : t.i;
        c[static_cast<std::size_t>(free_exp - lo)] += t.coeff * int_power(fixed, fixed_exp);
    }
    return c;
}

long long gcd_ll(long long a, long long b) { return std::gcd(std::llabs(a), std::llabs(b)); }

double dist(const Vec2& a, const Vec2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

// Parameter interval of base + t dir inside the window (Liang-Barsky).
bool clip(const TropicalEdge& e, const Window& w, double& t0, double& t1) {
    t0 = e.t_min;
    t1 = e.t_max;
    const double lo[2] = {w.x0, w.y0};
    const double hi[2] = {w.x1, w.y1};
    for (int a = 0; a < 2; ++a) {
        const double p = e.base[static_cast<std::size_t>(a)];
        const double d = e.direction[static_cast<std::size_t>(a)];
        if (d == 0.0) {
            if (p < lo[a] || p > hi[a])
                return false;
            continue;
        }
        double ta = (lo[a] - p) / d;
        double tb = (hi[a] - p) / d;
        if (ta > tb)
            std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
    }
    return t0 <= t1;
}

double point_segment_distance(const Vec2& q, const Vec2& a, const Vec2& b) {
    const double dx = b[0] - a[0];
    const double dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((q[0] - a[0]) * dx + (q[1] - a[1]) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return dist(q, {a[0] + t * dx, a[1] + t * dy});
}

} // namespace

PlaneCurve::PlaneCurve(GeneralizedPolynomial f) : f_(std::move(f)) {
    if (f_.dim() != 2)
        throw Error(ErrorKind::InvalidArgument, "a plane curve needs a polynomial in two variables");
    if (f_.terms().size() < 2)
        throw Error(ErrorKind::DegenerateCurve, "a plane curve needs at least two terms");
    for (const auto& t : f_.terms()) {
        if (t.coeff.imag() != 0.0)
            throw Error(ErrorKind::InvalidArgument, "plane curve coefficients must be real");
        if (!is_integer(t.exponent[0]) || !is_integer(t.exponent[1]))
            throw Error(ErrorKind::InvalidArgument, "plane curve exponents must be integers");
    }
}

PlaneCurve deform(const PlaneCurve& f, double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw Error(ErrorKind::InvalidArgument, "h must be positive, got " + format_double(h));
    if (h == 1.0)
        return f;
    std::vector<Monomial> terms;
    for (const auto& t : f.polynomial().terms()) {
        const double a = t.coeff.real();
        terms.push_back({Complex(std::copysign(std::pow(std::abs(a), 1.0 / h), a), 0.0), t.exponent});
    }
    return PlaneCurve(GeneralizedPolynomial(2, std::move(terms)));
}

AmoebaSample sample_amoeba(const PlaneCurve& f, double h, const AmoebaOptions& options) {
    if (options.radial_samples == 0 || options.angular_samples == 0)
        throw Error(ErrorKind::InvalidArgument, "sample counts must be positive");
    const auto fh = deform(f, h);
    const auto terms = int_terms(fh);
    const auto& w = options.window;
    AmoebaSample out;
    std::size_t productive = 0;

    auto run_pass = [&](bool swap) {
        const double lo = swap ? w.y0 : w.x0;
        const double hi = swap ? w.y1 : w.x1;
        for (std::size_t r = 0; r < options.radial_samples; ++r) {
            const double log_coord = lo + (hi - lo) * (static_cast<double>(r) + 0.5) /
                                              static_cast<double>(options.radial_samples);
            const double modulus = std::exp(log_coord / h);
            for (std::size_t a = 0; a < options.angular_samples; ++a) {
                const double theta = 2.0 * kPi * (static_cast<double>(a) + 0.5) /
                                     static_cast<double>(options.angular_samples);
                const Complex fixed = std::polar(modulus, theta);
                const auto c = column_polynomial(terms, fixed, swap);
                ++out.columns;
                const auto roots = nonzero_roots(c);
                if (roots.empty()) {
                    ++out.rootless_columns;
                    continue;
                }
                ++productive;
                for (const auto& root : roots) {
                    const double res = relative_residual(c, root);
                    if (!(res < kRootResidual) || root == Complex(0.0, 0.0)) {
                        ++out.rejected_roots;
                        continue;
                    }
                    const Complex x = swap ? root : fixed;
                    const Complex y = swap ? fixed : root;
                    const Vec2 p{h * std::log(std::abs(x)), h * std::log(std::abs(y))};
                    if (!w.contains(p))
                        continue;
                    out.points.push_back(p);
                    out.preimages.push_back({x, y});
                    out.max_residual = std::max(out.max_residual, res);
                }
            }
        }
    };
    run_pass(false);
    if (options.both_axes)
        run_pass(true);
    if (productive == 0)
        throw Error(ErrorKind::DegenerateCurve, "no column of the curve has a root in the torus");
    return out;
}

TropicalCurve tropical_curve(const PlaneCurve& f, bool with_coefficients) {
    struct Term {
        Vec2 d;
        double c;
    };
    std::vector<Term> terms;
    for (const auto& t : f.polynomial().terms())
        terms.push_back({{t.exponent[0], t.exponent[1]}, with_coefficients ? std::log(std::abs(t.coeff)) : 0.0});
    constexpr double tol = 1e-9;
    TropicalCurve curve;
    const std::size_t n = terms.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec2 nrm{terms[i].d[0] - terms[j].d[0], terms[i].d[1] - terms[j].d[1]};
            const long long g = gcd_ll(std::llround(nrm[0]), std::llround(nrm[1]));
            const Vec2 u{-nrm[1] / static_cast<double>(g), nrm[0] / static_cast<double>(g)};
            const double n2 = nrm[0] * nrm[0] + nrm[1] * nrm[1];
            const double shift = (terms[j].c - terms[i].c) / n2;
            const Vec2 p0{nrm[0] * shift, nrm[1] * shift};

            double t_lo = -std::numeric_limits<double>::infinity();
            double t_hi = std::numeric_limits<double>::infinity();
            bool empty = false;
            bool extreme_pair = true;
            const double si = terms[i].d[0] * nrm[0] + terms[i].d[1] * nrm[1];
            const double sj = terms[j].d[0] * nrm[0] + terms[j].d[1] * nrm[1];
            for (std::size_t k = 0; k < n && !empty; ++k) {
                if (k == i || k == j)
                    continue;
                const Vec2 diff{terms[i].d[0] - terms[k].d[0], terms[i].d[1] - terms[k].d[1]};
                const double alpha = diff[0] * p0[0] + diff[1] * p0[1] + terms[i].c - terms[k].c;
                const double beta = diff[0] * u[0] + diff[1] * u[1];
                if (beta == 0.0) {
                    if (alpha < -tol) {
                        empty = true;
                    } else if (alpha <= tol) {
                        // k ties along the whole line: the dual edge is the
                        // longest segment among the tied exponents.
                        const double sk = terms[k].d[0] * nrm[0] + terms[k].d[1] * nrm[1];
                        if (sk < std::min(si, sj) || sk > std::max(si, sj))
                            extreme_pair = false;
                    }
                    continue;
                }
                const double t = -alpha / beta;
                if (beta > 0.0)
                    t_lo = std::max(t_lo, t);
                else
                    t_hi = std::min(t_hi, t);
            }
            if (empty || !extreme_pair || t_hi - t_lo <= tol)
                continue;
            TropicalEdge e;
            e.weight = static_cast<int>(g);
            e.term_a = i;
            e.term_b = j;
            if (std::isfinite(t_lo)) {
                e.base = {p0[0] + t_lo * u[0], p0[1] + t_lo * u[1]};
                e.direction = u;
                e.t_min = 0.0;
                e.t_max = t_hi - t_lo;
            } else if (std::isfinite(t_hi)) {
                e.base = {p0[0] + t_hi * u[0], p0[1] + t_hi * u[1]};
                e.direction = {-u[0], -u[1]};
                e.t_min = 0.0;
            } else {
                e.base = p0;
                e.direction = u;
                e.t_min = -std::numeric_limits<double>::infinity();
            }
            curve.edges.push_back(e);
        }
    }
    auto add_vertex = [&](const Vec2& v) {
        for (const auto& w : curve.vertices)
            if (dist(v, w) <= 1e-7)
                return;
        curve.vertices.push_back(v);
    };
    for (const auto& e : curve.edges) {
        if (std::isfinite(e.t_min))
            add_vertex(e.base);
        if (std::isfinite(e.t_max))
            add_vertex({e.base[0] + e.t_max * e.direction[0], e.base[1] + e.t_max * e.direction[1]});
    }
    std::sort(curve.vertices.begin(), curve.vertices.end());
    return curve;
}

double balancing_defect(const TropicalCurve& curve) {
    double worst = 0.0;
    for (const auto& v : curve.vertices) {
        Vec2 sum{0.0, 0.0};
        for (const auto& e : curve.edges) {
            if (std::isfinite(e.t_min) && dist(e.base, v) <= 1e-7) {
                sum[0] += e.weight * e.direction[0];
                sum[1] += e.weight * e.direction[1];
            }
            if (std::isfinite(e.t_max)) {
                const Vec2 end{e.base[0] + e.t_max * e.direction[0], e.base[1] + e.t_max * e.direction[1]};
                if (dist(end, v) <= 1e-7) {
                    sum[0] -= e.weight * e.direction[0];
                    sum[1] -= e.weight * e.direction[1];
                }
            }
        }
        worst = std::max(worst, std::hypot(sum[0], sum[1]));
    }
    return worst;
}

std::vector<std::array<Vec2, 2>> clipped_segments(const TropicalCurve& curve, const Window& window) {
    std::vector<std::array<Vec2, 2>> out;
    for (const auto& e : curve.edges) {
        double t0 = 0.0;
        double t1 = 0.0;
        if (clip(e, window, t0, t1))
            out.push_back({Vec2{e.base[0] + t0 * e.direction[0], e.base[1] + t0 * e.direction[1]},
                           Vec2{e.base[0] + t1 * e.direction[0], e.base[1] + t1 * e.direction[1]}});
    }
    return out;
}

std::vector<Vec2> sample_curve(const TropicalCurve& curve, const Window& window, double resolution) {
    if (!(resolution > 0.0))
        throw Error(ErrorKind::InvalidArgument, "resolution must be positive");
    std::vector<Vec2> out;
    for (const auto& e : curve.edges) {
        double t0 = 0.0;
        double t1 = 0.0;
        if (!clip(e, window, t0, t1))
            continue;
        const double len = (t1 - t0) * std::hypot(e.direction[0], e.direction[1]);
        const auto steps = static_cast<std::size_t>(std::ceil(len / resolution));
        for (std::size_t k = 0; k <= steps; ++k) {
            const double t = steps ? t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(steps) : t0;
            out.push_back({e.base[0] + t * e.direction[0], e.base[1] + t * e.direction[1]});
        }
    }
    return out;
}

double hausdorff_distance(const std::vector<Vec2>& a, const TropicalCurve& b, const Window& window,
                          double resolution) {
    std::vector<Vec2> pts;
    for (const auto& p : a)
        if (window.contains(p))
            pts.push_back(p);
    const auto curve_pts = sample_curve(b, window, resolution);
    if (pts.empty() || curve_pts.empty())
        throw Error(ErrorKind::EmptyWindow, "no points of one of the sets inside the window");

    const auto segments = clipped_segments(b, window);
    double forward = 0.0;
    for (const auto& p : pts) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : segments)
            best = std::min(best, point_segment_distance(p, s[0], s[1]));
        forward = std::max(forward, best);
    }

    std::sort(pts.begin(), pts.end());
    double backward = 0.0;
    for (const auto& q : curve_pts) {
        double best = std::numeric_limits<double>::infinity();
        auto it = std::lower_bound(pts.begin(), pts.end(), Vec2{q[0], -std::numeric_limits<double>::infinity()});
        for (auto r = it; r != pts.end() && (*r)[0] - q[0] < best; ++r)
            best = std::min(best, dist(*r, q));
        for (auto r = it; r != pts.begin();) {
            --r;
            if (q[0] - (*r)[0] >= best)
                break;
            best = std::min(best, dist(*r, q));
        }
        backward = std::max(backward, best);
    }
    return std::max(forward, backward);
}

} // namespace tropic
