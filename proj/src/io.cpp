#include "tropic/io.hpp"

#include "tropic/error.hpp"
#include "tropic/format.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tropic {

namespace {

// Next content line (not blank, not a comment); false at end of input.
bool next_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        line = std::string(t);
        return true;
    }
    return false;
}

Error parse_error(std::size_t line_no, const std::string& what) {
    return Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + what);
}

std::size_t parse_index(std::string_view token, std::size_t line_no) {
    const long long v = parse_integer(token);
    if (v < 0)
        throw parse_error(line_no, "negative count or index");
    return static_cast<std::size_t>(v);
}

} // namespace

WeightedDigraph read_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!next_line(in, line, line_no))
        throw Error(ErrorKind::ParseError, "empty graph file");
    auto head = split_fields(line);
    if (head.size() != 2)
        throw parse_error(line_no, "expected 'n m'");
    const std::size_t n = parse_index(head[0], line_no);
    const std::size_t m = parse_index(head[1], line_no);
    WeightedDigraph g(n, {});
    for (std::size_t e = 0; e < m; ++e) {
        if (!next_line(in, line, line_no))
            throw Error(ErrorKind::ParseError, "expected " + std::to_string(m) + " edges, found " + std::to_string(e));
        auto f = split_fields(line);
        if (f.size() != 3)
            throw parse_error(line_no, "expected 'u v w'");
        const std::size_t u = parse_index(f[0], line_no);
        const std::size_t v = parse_index(f[1], line_no);
        if (u >= n || v >= n)
            throw parse_error(line_no, "node index out of range");
        g.add_edge(u, v, parse_double(f[2]));
    }
    if (next_line(in, line, line_no))
        throw parse_error(line_no, "trailing data after the edge list");
    return g;
}

void write_graph(std::ostream& out, const WeightedDigraph& g) {
    out << g.node_count() << ' ' << g.edges().size() << '\n';
    for (const auto& e : g.edges())
        out << e.source << ' ' << e.target << ' ' << format_double(e.weight) << '\n';
}

GeneralizedPolynomial read_polynomial(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t dim = 0;
    std::vector<Monomial> terms;
    while (next_line(in, line, line_no)) {
        auto f = split_fields(line);
        if (f.size() < 3 || f.size() > 5)
            throw parse_error(line_no, "expected 're im d1 [d2 [d3]]'");
        const std::size_t d = f.size() - 2;
        if (dim == 0)
            dim = d;
        else if (d != dim)
            throw Error(ErrorKind::DimMismatch, "line " + std::to_string(line_no) + ": term has " +
                                                    std::to_string(d) + " exponents, expected " + std::to_string(dim));
        Monomial m;
        m.coeff = Complex(parse_double(f[0]), parse_double(f[1]));
        for (std::size_t k = 0; k < d; ++k)
            m.exponent.push_back(parse_double(f[2 + k]));
        terms.push_back(std::move(m));
    }
    if (terms.empty())
        throw Error(ErrorKind::ParseError, "polynomial file has no terms");
    return GeneralizedPolynomial(dim, std::move(terms));
}

void write_polynomial(std::ostream& out, const GeneralizedPolynomial& f) {
    for (const auto& t : f.terms()) {
        out << format_double(t.coeff.real()) << ' ' << format_double(t.coeff.imag());
        for (double e : t.exponent)
            out << ' ' << format_double(e);
        out << '\n';
    }
}

GridFunction read_grid(std::istream& in, const SemiringSpec& spec) {
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    GridShape shape;
    std::vector<ExtendedScalar> values;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto t = trim(raw);
        if (t.empty() || t.rfind("##", 0) == 0)
            continue;
        if (t.front() == '#') {
            if (have_header)
                throw parse_error(line_no, "second grid header");
            auto f = split_fields(t.substr(1));
            if (f.empty())
                throw parse_error(line_no, "empty grid header");
            const long long dim = parse_integer(f[0]);
            if (dim != 1 && dim != 2)
                throw parse_error(line_no, "grid dimension must be 1 or 2");
            if (f.size() != 1 + 3 * static_cast<std::size_t>(dim))
                throw parse_error(line_no, "expected '# dim step.. origin.. extent..'");
            shape.dim = static_cast<int>(dim);
            for (std::size_t a = 0; a < static_cast<std::size_t>(dim); ++a) {
                shape.step[a] = parse_double(f[1 + a]);
                shape.origin[a] = parse_double(f[1 + dim + a]);
                shape.extent[a] = parse_index(f[1 + 2 * dim + a], line_no);
            }
            shape.validate();
            have_header = true;
            continue;
        }
        if (!have_header)
            throw parse_error(line_no, "value before the grid header");
        values.push_back(parse_scalar(t, spec));
    }
    if (!have_header)
        throw Error(ErrorKind::ParseError, "missing grid header");
    if (values.size() != shape.size())
        throw Error(ErrorKind::GridMismatch, "header announces " + std::to_string(shape.size()) + " values, found " +
                                                 std::to_string(values.size()));
    return GridFunction(shape, std::move(values), spec);
}

void write_grid(std::ostream& out, const GridFunction& f) {
    const auto& s = f.shape();
    out << "# " << s.dim;
    for (int a = 0; a < s.dim; ++a)
        out << ' ' << format_double(s.step[static_cast<std::size_t>(a)]);
    for (int a = 0; a < s.dim; ++a)
        out << ' ' << format_double(s.origin[static_cast<std::size_t>(a)]);
    for (int a = 0; a < s.dim; ++a)
        out << ' ' << s.extent[static_cast<std::size_t>(a)];
    out << '\n';
    for (const auto& v : f.values())
        out << format_scalar(v, f.spec()) << '\n';
}

std::vector<Point> read_points(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<Point> out;
    while (next_line(in, line, line_no)) {
        Point p;
        for (auto field : split_fields(line))
            p.push_back(parse_double(field));
        if (!out.empty() && p.size() != out.front().size())
            throw Error(ErrorKind::DimMismatch, "line " + std::to_string(line_no) + ": point has " +
                                                    std::to_string(p.size()) + " coordinates, expected " +
                                                    std::to_string(out.front().size()));
        out.push_back(std::move(p));
    }
    if (out.empty())
        throw Error(ErrorKind::ParseError, "no points in input");
    return out;
}

void write_points(std::ostream& out, const std::vector<Point>& points) {
    for (const auto& p : points) {
        for (std::size_t k = 0; k < p.size(); ++k)
            out << (k ? " " : "") << format_double(p[k]);
        out << '\n';
    }
}

PointCloud read_point_cloud(std::istream& in) {
    PointCloud cloud;
    cloud.points = read_points(in);
    cloud.dim = static_cast<int>(cloud.points.front().size());
    cloud.validate();
    return cloud;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace tropic
