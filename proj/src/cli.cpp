#include "tropic/cli.hpp"

#include "tropic/amoeba.hpp"
#include "tropic/calculus.hpp"
#include "tropic/dequantize.hpp"
#include "tropic/error.hpp"
#include "tropic/format.hpp"
#include "tropic/fractal.hpp"
#include "tropic/hjb.hpp"
#include "tropic/io.hpp"
#include "tropic/matrix.hpp"
#include "tropic/polytope.hpp"
#include "tropic/semiring.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#ifndef TROPIC_VERSION
#define TROPIC_VERSION "0.0.0"
#endif

namespace tropic {

const char* version() noexcept { return TROPIC_VERSION; }

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorKind::InvalidArgument, "SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

// `#`-prefixed header recording everything that determines the output.
class Manifest {
public:
    explicit Manifest(const std::string& command) {
        lines_.push_back(std::string("## tropic ") + version());
        lines_.push_back("## command = " + command);
    }

    void param(const std::string& name, const std::string& value) { lines_.push_back("## param " + name + " = " + value); }

    // Reads `path`, records its digest and returns the contents.
    std::string input(const std::string& path) {
        std::string data = read_file(path);
        lines_.push_back("## input " + std::filesystem::path(path).filename().string() + " sha256 = " + sha256_hex(data));
        return data;
    }

    void write(std::ostream& out) const {
        for (const auto& l : lines_)
            out << l << '\n';
    }

private:
    std::vector<std::string> lines_;
};

struct Globals {
    std::string semiring;
    std::string out;
    std::uint64_t seed = 0;
    bool quiet = false;
};

struct Context {
    Globals globals;
    Manifest manifest;
    std::ostringstream body;
    std::ostream& err;
};

std::string join(const std::vector<double>& v, char sep = ',') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += sep;
        s += format_double(v[i]);
    }
    return s;
}

std::vector<double> list_option(const std::string& name, const std::string& text) {
    try {
        return parse_double_list(text);
    } catch (const Error& e) {
        throw UsageError("--" + name + ": " + e.what());
    }
}

SemiringSpec resolve_semiring(Context& ctx, const char* fallback) {
    const std::string text = ctx.globals.semiring.empty() ? fallback : ctx.globals.semiring;
    SemiringSpec spec = SemiringSpec::max_plus();
    try {
        spec = SemiringSpec::parse(text);
    } catch (const Error& e) {
        throw UsageError(std::string("--semiring: ") + e.what());
    }
    ctx.manifest.param("semiring", spec.name());
    return spec;
}

template <class T, class Reader>
T read_input(Context& ctx, const std::string& path, Reader reader) {
    std::istringstream in(ctx.manifest.input(path));
    return reader(in);
}

void write_output_file(Context& ctx, const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorKind::InvalidArgument, "cannot write '" + path.string() + "'");
    ctx.manifest.write(f);
    f << content;
    if (!ctx.globals.quiet)
        ctx.err << "wrote " << path.string() << '\n';
}

// ---- semiring-check -------------------------------------------------------

struct SemiringCheckOpts {
    std::size_t trials = 10000;
};

int cmd_semiring_check(Context& ctx, const SemiringCheckOpts& o) {
    const auto spec = resolve_semiring(ctx, "maxplus");
    ctx.manifest.param("trials", std::to_string(o.trials));
    ctx.manifest.param("seed", std::to_string(ctx.globals.seed));
    std::mt19937_64 rng(ctx.globals.seed);
    std::uniform_int_distribution<int> pick(0, 31);
    std::uniform_int_distribution<int> grid(-512, 512);
    // Dyadic values keep max-plus arithmetic exact.
    auto draw = [&]() -> ExtendedScalar {
        const int k = pick(rng);
        if (k == 0)
            return ExtendedScalar::bottom();
        if (k == 1 && spec.idempotent())
            return ExtendedScalar::top();
        return ExtendedScalar(grid(rng) / 8.0);
    };
    auto same = [&](const ExtendedScalar& a, const ExtendedScalar& b) {
        if (spec.idempotent() || !a.is_finite() || !b.is_finite())
            return a == b;
        const double x = a.value();
        const double y = b.value();
        return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
    };
    struct Law {
        std::string name;
        std::function<bool(const ExtendedScalar&, const ExtendedScalar&, const ExtendedScalar&)> holds;
        std::size_t failed = 0;
    };
    auto A = [&](const ExtendedScalar& x, const ExtendedScalar& y) { return add(x, y, spec); };
    auto M = [&](const ExtendedScalar& x, const ExtendedScalar& y) { return mul(x, y, spec); };
    std::vector<Law> laws;
    laws.push_back({"add_associative", [&](auto& a, auto& b, auto& c) { return same(A(A(a, b), c), A(a, A(b, c))); }});
    laws.push_back({"add_commutative", [&](auto& a, auto& b, auto&) { return same(A(a, b), A(b, a)); }});
    if (spec.idempotent())
        laws.push_back({"add_idempotent", [&](auto& a, auto&, auto&) { return same(A(a, a), a); }});
    laws.push_back({"add_zero", [&](auto& a, auto&, auto&) { return same(A(a, zero(spec)), a); }});
    laws.push_back({"mul_associative", [&](auto& a, auto& b, auto& c) { return same(M(M(a, b), c), M(a, M(b, c))); }});
    laws.push_back({"mul_commutative", [&](auto& a, auto& b, auto&) { return same(M(a, b), M(b, a)); }});
    laws.push_back({"mul_one", [&](auto& a, auto&, auto&) { return same(M(a, one(spec)), a); }});
    laws.push_back({"mul_zero", [&](auto& a, auto&, auto&) { return same(M(a, zero(spec)), zero(spec)); }});
    laws.push_back({"distributive", [&](auto& a, auto& b, auto& c) {
                        return same(M(a, A(b, c)), A(M(a, b), M(a, c))) && same(M(A(b, c), a), A(M(b, a), M(c, a)));
                    }});
    std::size_t gap_failed = 0;
    const double hs[] = {1.0, 0.1, 0.01};
    for (std::size_t t = 0; t < o.trials; ++t) {
        const auto a = draw();
        const auto b = draw();
        const auto c = draw();
        for (auto& law : laws)
            if (!law.holds(a, b, c))
                ++law.failed;
        const double u = grid(rng) / 8.0;
        const double v = grid(rng) / 8.0;
        for (double h : hs) {
            const double gap = dequantized_add_limit_gap(u, v, h);
            if (!(gap >= 0.0 && gap <= h * std::log(2.0)))
                ++gap_failed;
        }
    }
    bool ok = gap_failed == 0;
    ctx.body << "# law trials failed\n";
    for (const auto& law : laws) {
        ctx.body << law.name << ' ' << o.trials << ' ' << law.failed << '\n';
        ok = ok && law.failed == 0;
    }
    ctx.body << "deformation_gap " << 3 * o.trials << ' ' << gap_failed << '\n';
    ctx.body << "status " << (ok ? "pass" : "fail") << '\n';
    if (!ok)
        ctx.err << "LawViolation: at least one semiring law failed\n";
    return ok ? 0 : 1;
}

// ---- shortest-path / solve-bellman ----------------------------------------

struct PathOpts {
    std::string graph;
    long long source = -1;
    std::string method = "closure";
    std::size_t max_iters = 0;
};

void write_distances(Context& ctx, const std::vector<ExtendedScalar>& d, const SemiringSpec& spec) {
    for (std::size_t v = 0; v < d.size(); ++v)
        ctx.body << v << ' ' << format_scalar(d[v], spec) << '\n';
}

std::size_t checked_source(long long source, std::size_t n) {
    if (source < 0 || static_cast<std::size_t>(source) >= n)
        throw Error(ErrorKind::InvalidArgument,
                    "source " + std::to_string(source) + " outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
    return static_cast<std::size_t>(source);
}

int cmd_shortest_path(Context& ctx, const PathOpts& o) {
    const auto spec = resolve_semiring(ctx, "minplus");
    ctx.manifest.param("source", std::to_string(o.source));
    const auto g = read_input<WeightedDigraph>(ctx, o.graph, [](std::istream& in) { return read_graph(in); });
    write_distances(ctx, shortest_paths(g, checked_source(o.source, g.node_count()), spec), spec);
    return 0;
}

int cmd_solve_bellman(Context& ctx, const PathOpts& o) {
    const auto spec = resolve_semiring(ctx, "minplus");
    if (o.method != "closure" && o.method != "jacobi" && o.method != "gauss-seidel")
        throw UsageError("--method must be closure, jacobi or gauss-seidel");
    ctx.manifest.param("method", o.method);
    ctx.manifest.param("source", o.source < 0 ? std::string("all") : std::to_string(o.source));
    const auto g = read_input<WeightedDigraph>(ctx, o.graph, [](std::istream& in) { return read_graph(in); });
    const std::size_t n = g.node_count();
    const std::size_t max_iters = o.max_iters ? o.max_iters : n + 2;
    if (o.method != "closure")
        ctx.manifest.param("max-iters", std::to_string(max_iters));
    // All pairs: X = A X + I gives X = A*. One source: the column form over A^T.
    const auto adj = g.adjacency(spec);
    const bool single = o.source >= 0;
    const auto h = single ? adj.transposed() : adj;
    const auto f = single ? SemiringMatrix::unit_column(n, checked_source(o.source, n), spec)
                          : SemiringMatrix::identity(n, spec);
    SemiringMatrix x(0, 0, spec);
    if (o.method == "closure") {
        x = solve_bellman(h, f);
    } else {
        const auto x0 = SemiringMatrix::zero(f.rows(), f.cols(), spec);
        const auto r = o.method == "jacobi" ? jacobi_iterate(h, f, x0, max_iters)
                                            : gauss_seidel_iterate(h, f, x0, max_iters);
        ctx.body << "# iterations " << r.iterations << '\n';
        x = r.solution;
    }
    if (single) {
        std::vector<ExtendedScalar> d(n);
        for (std::size_t v = 0; v < n; ++v)
            d[v] = x(v, 0);
        write_distances(ctx, d, spec);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                ctx.body << (j ? " " : "") << format_scalar(x(i, j), spec);
            ctx.body << '\n';
        }
    }
    return 0;
}

// ---- idempotent calculus ---------------------------------------------------

GridFunction load_grid(Context& ctx, const std::string& path, const SemiringSpec& spec) {
    return read_input<GridFunction>(ctx, path, [&](std::istream& in) { return read_grid(in, spec); });
}

struct LegendreOpts {
    std::string phi;
    double xi_origin = 0.0;
    double xi_step = 0.0;
    std::size_t xi_count = 0;
    std::string method = "auto";
};

int cmd_legendre(Context& ctx, const LegendreOpts& o) {
    const auto spec = resolve_semiring(ctx, "maxplus");
    LegendreMethod method = LegendreMethod::Auto;
    if (o.method == "brute")
        method = LegendreMethod::BruteForce;
    else if (o.method == "fast")
        method = LegendreMethod::Fast;
    else if (o.method != "auto")
        throw UsageError("--method must be auto, brute or fast");
    const auto phi = load_grid(ctx, o.phi, spec);
    GridShape xi;
    if (o.xi_count == 0) {
        // Slopes spanning the finite differences of phi, on as many points.
        const auto range = suggest_slope_range(phi);
        const std::size_t n = phi.shape().extent[0];
        const double step = (range[1] > range[0] && n > 1) ? (range[1] - range[0]) / static_cast<double>(n - 1) : 1.0;
        xi = GridShape::line(range[0], step, n);
    } else {
        xi = GridShape::line(o.xi_origin, o.xi_step, o.xi_count);
    }
    ctx.manifest.param("xi-origin", format_double(xi.origin[0]));
    ctx.manifest.param("xi-step", format_double(xi.step[0]));
    ctx.manifest.param("xi-count", std::to_string(xi.extent[0]));
    ctx.manifest.param("method", o.method);
    write_grid(ctx.body, legendre_transform(phi, xi, method));
    return 0;
}

struct PairOpts {
    std::string a;
    std::string b;
};

int cmd_supconv(Context& ctx, const PairOpts& o) {
    const auto spec = resolve_semiring(ctx, "maxplus");
    const auto phi = load_grid(ctx, o.a, spec);
    const auto psi = load_grid(ctx, o.b, spec);
    write_grid(ctx.body, sup_convolution(phi, psi));
    return 0;
}

int cmd_kernel_apply(Context& ctx, const PairOpts& o) {
    const auto spec = resolve_semiring(ctx, "maxplus");
    const auto k = Kernel::from_grid(load_grid(ctx, o.a, spec));
    const auto phi = load_grid(ctx, o.b, spec);
    write_grid(ctx.body, apply_kernel(k, phi));
    return 0;
}

// ---- dequantization --------------------------------------------------------

GeneralizedPolynomial load_polynomial(Context& ctx, const std::string& path) {
    return read_input<GeneralizedPolynomial>(ctx, path, [](std::istream& in) { return read_polynomial(in); });
}

struct PolyOpts {
    std::string poly;
    bool log_coefficients = false;
    std::vector<std::string> xs;
    std::string hs = "1,0.1,0.01";
};

int cmd_tropicalize(Context& ctx, const PolyOpts& o) {
    ctx.manifest.param("log-coefficients", o.log_coefficients ? "true" : "false");
    const auto f = load_polynomial(ctx, o.poly);
    const auto t = o.log_coefficients ? tropicalize_with_log_coefficients(f) : tropicalize(f);
    ctx.body << "# constant slope...\n";
    for (const auto& term : t.terms())
        ctx.body << format_double(term.constant) << ' ' << join(term.slope, ' ') << '\n';
    return 0;
}

int cmd_newton(Context& ctx, const PolyOpts& o) {
    const auto f = load_polynomial(ctx, o.poly);
    write_points(ctx.body, newton_set(f).vertices());
    return 0;
}

int cmd_dequantize(Context& ctx, const PolyOpts& o) {
    if (o.xs.empty())
        throw UsageError("dequantize needs at least one --x point");
    std::vector<std::vector<double>> xs;
    for (const auto& x : o.xs)
        xs.push_back(list_option("x", x));
    const auto hs = list_option("h", o.hs);
    for (const auto& x : xs)
        ctx.manifest.param("x", join(x));
    ctx.manifest.param("h", join(hs));
    const auto f = load_polynomial(ctx, o.poly);
    const auto limit = tropicalize(f);
    std::string head;
    for (std::size_t k = 0; k < f.dim(); ++k)
        head += "x" + std::to_string(k + 1) + ",";
    ctx.body << "# " << head << "h,value\n";
    for (const auto& x : xs) {
        if (x.size() != f.dim())
            throw Error(ErrorKind::DimMismatch, "point " + join(x) + " has " + std::to_string(x.size()) +
                                                    " coordinates, polynomial has " + std::to_string(f.dim()));
        for (double h : hs)
            ctx.body << join(x) << ',' << format_double(h) << ',' << format_double(dequantize_h(f, x, h)) << '\n';
        ctx.body << join(x) << ",0," << format_double(limit(x)) << '\n';
    }
    return 0;
}

// ---- polytopes -------------------------------------------------------------

struct PolytopeOpts {
    std::string op;
    std::vector<std::string> files;
    std::string dir;
};

int cmd_polytope(Context& ctx, const PolytopeOpts& o) {
    ctx.manifest.param("op", o.op);
    auto load = [&](const std::string& path) {
        return Polytope::hull(read_input<std::vector<Point>>(ctx, path, [](std::istream& in) { return read_points(in); }));
    };
    if (o.op == "support") {
        if (o.files.size() != 1 || o.dir.empty())
            throw UsageError("polytope support takes one file and --dir");
        const auto d = list_option("dir", o.dir);
        ctx.manifest.param("dir", join(d));
        ctx.body << format_double(support_function(load(o.files[0]), d)) << '\n';
        return 0;
    }
    if (o.op != "sum" && o.op != "hullunion")
        throw UsageError("polytope operation must be sum, hullunion or support");
    if (o.files.size() != 2)
        throw UsageError("polytope " + o.op + " takes two files");
    const auto p = load(o.files[0]);
    const auto q = load(o.files[1]);
    write_points(ctx.body, (o.op == "sum" ? minkowski_sum(p, q) : hull_union(p, q)).vertices());
    return 0;
}

// ---- hjb -------------------------------------------------------------------

struct HjbOpts {
    double m = 1.0;
    double T = 1.0;
    double dt = 0.05;
    std::string hs = "0.4,0.2,0.1,0.05";
    std::string init = "quad";
    std::string potential = "zero";
    double grid_min = -2.0;
    double grid_max = 2.0;
    std::size_t points = 401;
    std::string outdir;
};

int cmd_hjb(Context& ctx, const HjbOpts& o) {
    const auto hs = list_option("h", o.hs);
    const auto spec = SemiringSpec::min_plus();
    for (const auto& [name, value] : {std::pair{"m", o.m}, {"T", o.T}, {"dt", o.dt}})
        ctx.manifest.param(name, format_double(value));
    ctx.manifest.param("h", join(hs));
    ctx.manifest.param("init", o.init);
    ctx.manifest.param("potential", o.potential);

    auto initial = [&]() {
        if (o.init.rfind("file:", 0) == 0)
            return load_grid(ctx, o.init.substr(5), spec);
        if (o.points < 2 || !(o.grid_max > o.grid_min))
            throw UsageError("--points must be at least 2 and --grid-max above --grid-min");
        std::function<double(double)> init;
        if (o.init == "quad")
            init = [](double x) { return 0.5 * x * x; };
        else if (o.init == "abs")
            init = [](double x) { return std::abs(x); };
        else
            throw UsageError("--init must be quad, abs or file:<csv>");
        ctx.manifest.param("grid-min", format_double(o.grid_min));
        ctx.manifest.param("grid-max", format_double(o.grid_max));
        ctx.manifest.param("points", std::to_string(o.points));
        const auto grid =
            GridShape::line(o.grid_min, (o.grid_max - o.grid_min) / static_cast<double>(o.points - 1), o.points);
        return GridFunction::sample(grid, init, spec);
    }();
    auto potential = [&]() {
        if (o.potential == "zero")
            return GridFunction::sample(initial.shape(), [](double) { return 0.0; }, spec);
        if (o.potential.rfind("file:", 0) == 0)
            return load_grid(ctx, o.potential.substr(5), spec);
        throw UsageError("--potential must be zero or file:<csv>");
    }();
    const HJProblem prob{o.m, std::move(potential), std::move(initial)};
    prob.validate();

    const auto report = dequantization_convergence(prob, o.T, o.dt, hs);
    ctx.body << "# h gap\n";
    for (std::size_t k = 0; k < report.h.size(); ++k)
        ctx.body << format_double(report.h[k]) << ' ' << format_double(report.gap[k]) << '\n';
    ctx.body << "decreasing " << (report.decreasing ? "yes" : "no") << '\n';
    if (!o.outdir.empty()) {
        std::ostringstream hl;
        write_grid(hl, report.hopf_lax);
        write_output_file(ctx, o.outdir, "hopf_lax.csv", hl.str());
        for (std::size_t k = 0; k < report.viscous.size(); ++k) {
            std::ostringstream s;
            write_grid(s, report.viscous[k]);
            write_output_file(ctx, o.outdir, "hjb_h" + std::to_string(k) + ".csv", s.str());
        }
    }
    return 0;
}

// ---- boxdim ----------------------------------------------------------------

struct BoxdimOpts {
    std::string cloud;
    std::string scales;
};

int cmd_boxdim(Context& ctx, const BoxdimOpts& o) {
    const auto scales = list_option("scales", o.scales);
    ctx.manifest.param("scales", join(scales));
    const auto cloud = read_input<PointCloud>(ctx, o.cloud, [](std::istream& in) { return read_point_cloud(in); });
    const auto [estimate, sweep] = hb_dimension(cloud, scales);
    ctx.body << "# rho count log_inv_rho log_count\n";
    for (std::size_t k = 0; k < sweep.scales.size(); ++k)
        ctx.body << format_double(sweep.scales[k]) << ' ' << sweep.counts[k] << ' '
                 << format_double(sweep.log_inv_scales[k]) << ' ' << format_double(sweep.log_counts[k]) << '\n';
    ctx.body << "estimate " << format_double(estimate) << '\n';
    return 0;
}

// ---- amoeba ----------------------------------------------------------------

struct AmoebaOpts {
    std::string poly;
    std::string hs = "1,0.5,0.25,0.1,0.05";
    std::size_t samples = 200;
    std::size_t angles = 32;
    std::string window = "-3,3,-3,3";
    std::string outdir;
};

int cmd_amoeba(Context& ctx, const AmoebaOpts& o) {
    const auto hs = list_option("h", o.hs);
    const auto w = list_option("window", o.window);
    if (w.size() != 4 || !(w[1] > w[0]) || !(w[3] > w[2]))
        throw UsageError("--window needs x0,x1,y0,y1 with x0 < x1 and y0 < y1");
    ctx.manifest.param("h", join(hs));
    ctx.manifest.param("samples", std::to_string(o.samples));
    ctx.manifest.param("angles", std::to_string(o.angles));
    ctx.manifest.param("window", join(w));
    const PlaneCurve f(load_polynomial(ctx, o.poly));
    AmoebaOptions opts;
    opts.radial_samples = o.samples;
    opts.angular_samples = o.angles;
    opts.window = Window{w[0], w[1], w[2], w[3]};
    const auto curve = tropical_curve(f);

    ctx.body << "# h points max_residual rejected hausdorff\n";
    for (std::size_t k = 0; k < hs.size(); ++k) {
        const auto sample = sample_amoeba(f, hs[k], opts);
        const double dist = hausdorff_distance(sample.points, curve, opts.window);
        ctx.body << format_double(hs[k]) << ' ' << sample.points.size() << ' ' << format_double(sample.max_residual)
                 << ' ' << sample.rejected_roots << ' ' << format_double(dist) << '\n';
        if (!o.outdir.empty()) {
            std::ostringstream s;
            for (const auto& p : sample.points)
                s << format_double(p[0]) << ' ' << format_double(p[1]) << '\n';
            write_output_file(ctx, o.outdir, "amoeba_h" + std::to_string(k) + ".csv", s.str());
        }
    }
    ctx.body << "balancing_defect " << format_double(balancing_defect(curve)) << '\n';
    if (!o.outdir.empty()) {
        std::ostringstream s;
        for (const auto& seg : clipped_segments(curve, opts.window))
            s << format_double(seg[0][0]) << ' ' << format_double(seg[0][1]) << ' ' << format_double(seg[1][0]) << ' '
              << format_double(seg[1][1]) << '\n';
        write_output_file(ctx, o.outdir, "tropical.csv", s.str());
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Idempotent and tropical mathematics toolkit", "tropic"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");
    Globals g;
    app.add_option("--semiring", g.semiring, "maxplus, minplus or subtropical:<h>");
    app.add_option("--out", g.out, "write results to this file instead of standard output");
    app.add_option("--seed", g.seed, "seed for randomized check suites");
    app.add_flag("--quiet", g.quiet, "suppress progress notes on standard error");
    app.set_version_flag("--version", std::string(version()));

    auto sub = [&](const char* name, const char* desc) {
        auto* s = app.add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    SemiringCheckOpts sc;
    auto* s_check = sub("semiring-check", "randomized semiring axiom checks");
    s_check->add_option("--trials", sc.trials, "number of random triples")->check(CLI::PositiveNumber);

    PathOpts sp;
    auto* s_path = sub("shortest-path", "single-source distances on a weighted digraph");
    s_path->add_option("graph", sp.graph, "graph file")->required();
    s_path->add_option("--source", sp.source, "source node")->required();

    PathOpts sb;
    auto* s_bell = sub("solve-bellman", "least solution of X = H X + F");
    s_bell->add_option("graph", sb.graph, "graph file")->required();
    s_bell->add_option("--method", sb.method, "closure, jacobi or gauss-seidel");
    s_bell->add_option("--source", sb.source, "solve for one source column only");
    s_bell->add_option("--max-iters", sb.max_iters, "iteration cap for jacobi and gauss-seidel");

    LegendreOpts lg;
    auto* s_leg = sub("legendre", "Legendre transform of a grid function");
    s_leg->add_option("phi", lg.phi, "grid CSV")->required();
    s_leg->add_option("--xi-origin", lg.xi_origin, "first slope of the xi grid");
    s_leg->add_option("--xi-step", lg.xi_step, "spacing of the xi grid");
    s_leg->add_option("--xi-count", lg.xi_count, "0 derives the slope grid from phi");
    s_leg->add_option("--method", lg.method, "auto, brute or fast");

    PairOpts cv;
    auto* s_conv = sub("supconv", "sup-convolution of two grid functions");
    s_conv->add_option("phi", cv.a, "grid CSV")->required();
    s_conv->add_option("psi", cv.b, "grid CSV")->required();

    PairOpts ka;
    auto* s_kern = sub("kernel-apply", "apply an integral operator with a 2-D kernel grid");
    s_kern->add_option("kernel", ka.a, "2-D grid CSV, axis 0 = x, axis 1 = y")->required();
    s_kern->add_option("phi", ka.b, "grid CSV on the x grid")->required();

    PolyOpts tp;
    auto* s_trop = sub("tropicalize", "limit tropical polynomial");
    s_trop->add_option("poly", tp.poly, "polynomial file")->required();
    s_trop->add_flag("--log-coefficients", tp.log_coefficients, "use log|a| as constants");

    PolyOpts nw;
    auto* s_newt = sub("newton", "vertices of the Newton polytope");
    s_newt->add_option("poly", nw.poly, "polynomial file")->required();

    PolyOpts dq;
    auto* s_deq = sub("dequantize", "h log|f(exp(x/h))| along a list of h");
    s_deq->add_option("poly", dq.poly, "polynomial file")->required();
    s_deq->add_option("--x", dq.xs, "evaluation point, comma-separated; repeatable");
    s_deq->add_option("--h", dq.hs, "comma-separated list of h");

    PolytopeOpts pt;
    auto* s_poly = sub("polytope", "Minkowski semiring operations");
    s_poly->add_option("op", pt.op, "sum, hullunion or support")->required();
    s_poly->add_option("files", pt.files, "vertex files")->required();
    s_poly->add_option("--dir", pt.dir, "direction for support, comma-separated");

    HjbOpts hj;
    auto* s_hjb = sub("hjb", "Hopf-Lax evolution and its viscous dequantization");
    s_hjb->add_option("--m", hj.m, "mass");
    s_hjb->add_option("--T", hj.T, "final time");
    s_hjb->add_option("--dt", hj.dt, "Hopf-Lax time step");
    s_hjb->add_option("--h", hj.hs, "comma-separated list of h");
    s_hjb->add_option("--init", hj.init, "quad, abs or file:<csv>");
    s_hjb->add_option("--potential", hj.potential, "zero or file:<csv>");
    s_hjb->add_option("--grid-min", hj.grid_min, "left end of the x grid");
    s_hjb->add_option("--grid-max", hj.grid_max, "right end of the x grid");
    s_hjb->add_option("--points", hj.points, "number of grid points");
    s_hjb->add_option("--outdir", hj.outdir, "directory for per-h CSV files");

    BoxdimOpts bd;
    auto* s_box = sub("boxdim", "box-counting dimension of a point cloud");
    s_box->add_option("cloud", bd.cloud, "point cloud file")->required();
    s_box->add_option("--scales", bd.scales, "comma-separated decreasing box radii")->required();

    AmoebaOpts am;
    auto* s_amo = sub("amoeba", "sample amoebas of a deformed plane curve");
    s_amo->add_option("poly", am.poly, "polynomial file in two variables")->required();
    s_amo->add_option("--h", am.hs, "comma-separated list of h");
    s_amo->add_option("--samples", am.samples, "log-radius samples per pass")->check(CLI::PositiveNumber);
    s_amo->add_option("--angles", am.angles, "argument samples")->check(CLI::PositiveNumber);
    s_amo->add_option("--window", am.window, "x0,x1,y0,y1");
    s_amo->add_option("--outdir", am.outdir, "directory for CSV files");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << version() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    Context ctx{g, Manifest(chosen->get_name()), {}, err};
    int code = 0;
    try {
        if (chosen == s_check)
            code = cmd_semiring_check(ctx, sc);
        else if (chosen == s_path)
            code = cmd_shortest_path(ctx, sp);
        else if (chosen == s_bell)
            code = cmd_solve_bellman(ctx, sb);
        else if (chosen == s_leg)
            code = cmd_legendre(ctx, lg);
        else if (chosen == s_conv)
            code = cmd_supconv(ctx, cv);
        else if (chosen == s_kern)
            code = cmd_kernel_apply(ctx, ka);
        else if (chosen == s_trop)
            code = cmd_tropicalize(ctx, tp);
        else if (chosen == s_newt)
            code = cmd_newton(ctx, nw);
        else if (chosen == s_deq)
            code = cmd_dequantize(ctx, dq);
        else if (chosen == s_poly)
            code = cmd_polytope(ctx, pt);
        else if (chosen == s_hjb)
            code = cmd_hjb(ctx, hj);
        else if (chosen == s_box)
            code = cmd_boxdim(ctx, bd);
        else
            code = cmd_amoeba(ctx, am);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "InvalidArgument: " << e.what() << '\n';
        return 1;
    }

    std::ostringstream text;
    ctx.manifest.write(text);
    text << ctx.body.str();
    if (g.out.empty()) {
        out << text.str();
    } else {
        std::ofstream f(g.out, std::ios::binary);
        if (!f) {
            err << "InvalidArgument: cannot write '" << g.out << "'\n";
            return 1;
        }
        f << text.str();
    }
    return code;
}

} // namespace tropic
