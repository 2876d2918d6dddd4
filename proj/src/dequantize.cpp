#include "tropic/dequantize.hpp"

#include "tropic/error.hpp"
#include "tropic/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tropic {

namespace {

double dot_span(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

void require_dim(const GeneralizedPolynomial& f, std::size_t n) {
    if (n != f.dim())
        throw Error(ErrorKind::DimMismatch, "point of dimension " + std::to_string(n) + " for a polynomial in " +
                                                std::to_string(f.dim()) + " variables");
}

void require_positive_h(double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw Error(ErrorKind::InvalidArgument, "h must be positive and finite, got " + format_double(h));
}

} // namespace

GeneralizedPolynomial::GeneralizedPolynomial(std::size_t dim, std::vector<Monomial> terms) : dim_(dim) {
    if (dim == 0)
        throw Error(ErrorKind::InvalidArgument, "polynomial needs at least one variable");
    std::map<std::vector<double>, Complex> merged;
    for (auto& t : terms) {
        if (t.exponent.size() != dim)
            throw Error(ErrorKind::InvalidArgument, "exponent of dimension " + std::to_string(t.exponent.size()) +
                                                        ", expected " + std::to_string(dim));
        if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
            throw Error(ErrorKind::InvalidArgument, "non-finite coefficient");
        for (double d : t.exponent)
            if (!std::isfinite(d))
                throw Error(ErrorKind::InvalidArgument, "non-finite exponent");
        merged[t.exponent] += t.coeff;
    }
    for (auto& [d, a] : merged)
        if (a != Complex(0.0, 0.0))
            terms_.push_back({a, d});
}

bool GeneralizedPolynomial::has_nonnegative_coefficients() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Monomial& m) { return m.coeff.imag() == 0.0 && m.coeff.real() >= 0.0; });
}

GeneralizedPolynomial operator*(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g) {
    if (f.dim() != g.dim())
        throw Error(ErrorKind::DimMismatch, "product of polynomials in different dimensions");
    std::vector<Monomial> terms;
    terms.reserve(f.terms().size() * g.terms().size());
    for (const auto& a : f.terms())
        for (const auto& b : g.terms()) {
            std::vector<double> d(f.dim());
            for (std::size_t i = 0; i < d.size(); ++i)
                d[i] = a.exponent[i] + b.exponent[i];
            terms.push_back({a.coeff * b.coeff, std::move(d)});
        }
    return GeneralizedPolynomial(f.dim(), std::move(terms));
}

GeneralizedPolynomial operator+(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g) {
    if (f.dim() != g.dim())
        throw Error(ErrorKind::DimMismatch, "sum of polynomials in different dimensions");
    auto terms = f.terms();
    terms.insert(terms.end(), g.terms().begin(), g.terms().end());
    return GeneralizedPolynomial(f.dim(), std::move(terms));
}

double degree(const GeneralizedPolynomial& f) {
    if (f.dim() != 1)
        throw Error(ErrorKind::InvalidArgument, "degree is defined here for one variable");
    if (f.empty())
        throw Error(ErrorKind::InvalidArgument, "degree of the zero polynomial");
    double d = f.terms().front().exponent[0];
    for (const auto& t : f.terms())
        d = std::max(d, t.exponent[0]);
    return d;
}

Complex eval(const GeneralizedPolynomial& f, std::span<const double> z) {
    require_dim(f, z.size());
    for (double zi : z)
        if (!(zi > 0.0))
            throw Error(ErrorKind::NonpositiveArgument, "real powers need positive arguments, got " + format_double(zi));
    Complex sum(0.0, 0.0);
    for (const auto& t : f.terms()) {
        double mag = 1.0;
        for (std::size_t i = 0; i < z.size(); ++i)
            mag *= std::pow(z[i], t.exponent[i]);
        sum += t.coeff * mag;
    }
    return sum;
}

double dequantize_h(const GeneralizedPolynomial& f, std::span<const double> x, double h) {
    require_dim(f, x.size());
    require_positive_h(h);
    if (f.empty())
        throw Error(ErrorKind::ZeroValue, "the zero polynomial has no dequantization");
    // log|a * exp(d.x/h)| = log|a| + d.x/h; shift by the largest before summing.
    std::vector<double> logs;
    logs.reserve(f.terms().size());
    double shift = -std::numeric_limits<double>::infinity();
    for (const auto& t : f.terms()) {
        logs.push_back(std::log(std::abs(t.coeff)) + dot_span(t.exponent, x) / h);
        shift = std::max(shift, logs.back());
    }
    Complex sum(0.0, 0.0);
    double magnitude = 0.0;
    for (std::size_t k = 0; k < logs.size(); ++k) {
        const auto& a = f.terms()[k].coeff;
        const double w = std::exp(logs[k] - shift);
        sum += (a / std::abs(a)) * w;
        magnitude += w;
    }
    const double cancelled = std::abs(sum);
    if (!(cancelled > 8.0 * std::numeric_limits<double>::epsilon() * magnitude))
        throw Error(ErrorKind::ZeroValue, "polynomial vanishes at the sample point (to rounding)");
    return h * (shift + std::log(cancelled));
}

double dequantize_callback(const std::function<double(std::span<const double>)>& f, std::span<const double> x,
                           double h) {
    require_positive_h(h);
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = std::exp(x[i] / h);
    const double v = f(z);
    if (v == 0.0 || !std::isfinite(v))
        throw Error(ErrorKind::ZeroValue, "callback value " + format_double(v) + " has no finite logarithm");
    return h * std::log(std::abs(v));
}

TropicalPolynomial::TropicalPolynomial(std::vector<TropicalTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty())
        throw Error(ErrorKind::InvalidArgument, "tropical polynomial needs at least one term");
}

double TropicalPolynomial::operator()(std::span<const double> x) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms_)
        best = std::max(best, dot_span(t.slope, x) + t.constant);
    return best;
}

std::vector<std::size_t> TropicalPolynomial::maximizers(std::span<const double> x, double tolerance) const {
    const double top = (*this)(x);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < terms_.size(); ++k)
        if (dot_span(terms_[k].slope, x) + terms_[k].constant >= top - tolerance)
            out.push_back(k);
    return out;
}

TropicalPolynomial tropicalize(const GeneralizedPolynomial& f) {
    if (f.empty())
        throw Error(ErrorKind::InvalidArgument, "tropicalization of the zero polynomial");
    std::vector<TropicalTerm> terms;
    for (const auto& t : f.terms())
        terms.push_back({0.0, t.exponent});
    return TropicalPolynomial(std::move(terms));
}

TropicalPolynomial tropicalize_with_log_coefficients(const GeneralizedPolynomial& f) {
    if (f.empty())
        throw Error(ErrorKind::InvalidArgument, "tropicalization of the zero polynomial");
    std::vector<TropicalTerm> terms;
    for (const auto& t : f.terms())
        terms.push_back({std::log(std::abs(t.coeff)), t.exponent});
    return TropicalPolynomial(std::move(terms));
}

Polytope newton_set(const GeneralizedPolynomial& f) {
    if (f.dim() > 3)
        throw Error(ErrorKind::DimensionUnsupported, "Newton sets are computed for up to 3 variables, got " +
                                                         std::to_string(f.dim()));
    if (f.empty())
        throw Error(ErrorKind::InvalidArgument, "Newton set of the zero polynomial is empty");
    std::vector<Point> pts;
    for (const auto& t : f.terms())
        pts.push_back(t.exponent);
    return Polytope::hull(pts);
}

ProductCheck check_hom_product(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                               std::span<const DequantizeSample> samples) {
    const auto fg = f * g;
    ProductCheck out;
    for (const auto& s : samples) {
        const double lhs = dequantize_h(fg, s.x, s.h);
        const double rhs = dequantize_h(f, s.x, s.h) + dequantize_h(g, s.x, s.h);
        out.max_deviation = std::max(out.max_deviation, std::abs(lhs - rhs));
        ++out.samples;
    }
    out.passed = out.max_deviation <= 1e-9;
    return out;
}

bool is_tropical_tie(const GeneralizedPolynomial& f, std::span<const double> x, double tolerance) {
    return tropicalize(f).maximizers(x, tolerance).size() > 1;
}

SumCheck check_hom_sum(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g, std::span<const double> x,
                       std::span<const double> h_sequence) {
    SumCheck out;
    out.term_count = f.terms().size() + g.terms().size();
    out.nonnegative = f.has_nonnegative_coefficients() && g.has_nonnegative_coefficients();
    out.general_position = std::abs(tropicalize(f)(x) - tropicalize(g)(x)) > 1e-9;
    const auto sum = f + g;
    out.within_bound = true;
    out.decreasing = true;
    for (double h : h_sequence) {
        const double combined = dequantize_h(sum, x, h);
        const double separate = std::max(dequantize_h(f, x, h), dequantize_h(g, x, h));
        const double gap = std::abs(combined - separate);
        const double bound = h * std::log(static_cast<double>(out.term_count));
        if (!out.gap.empty() && gap > out.gap.back() + 1e-12)
            out.decreasing = false;
        if (gap > bound + 1e-12)
            out.within_bound = false;
        out.h.push_back(h);
        out.gap.push_back(gap);
        out.bound.push_back(bound);
    }
    return out;
}

} // namespace tropic
