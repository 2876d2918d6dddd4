#include "tropic/semiring.hpp"

#include "tropic/error.hpp"
#include "tropic/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tropic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_idempotent(const SemiringSpec& s, const char* op) {
    if (!s.idempotent())
        throw Error(ErrorKind::InvalidArgument,
                    std::string(op) + " is undefined for the non-idempotent semiring " + s.name());
}

} // namespace

SemiringSpec SemiringSpec::subtropical(double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw Error(ErrorKind::InvalidArgument, "subtropical semiring needs h > 0, got " + format_double(h));
    return SemiringSpec(SemiringKind::SubtropicalH, h);
}

SemiringSpec SemiringSpec::parse(std::string_view text) {
    if (text == "maxplus")
        return max_plus();
    if (text == "minplus")
        return min_plus();
    constexpr std::string_view prefix = "subtropical:";
    if (text.substr(0, prefix.size()) == prefix)
        return subtropical(parse_double(text.substr(prefix.size())));
    throw Error(ErrorKind::InvalidArgument, "unknown semiring '" + std::string(text) + "'");
}

std::string SemiringSpec::name() const {
    switch (kind_) {
    case SemiringKind::MaxPlus: return "maxplus";
    case SemiringKind::MinPlus: return "minplus";
    case SemiringKind::SubtropicalH: return "subtropical:" + format_double(h_);
    }
    return "unknown";
}

ExtendedScalar::ExtendedScalar(double value) : tag_(Tag::Finite), value_(value) {
    if (!std::isfinite(value))
        throw Error(ErrorKind::InvalidArgument, "finite scalar expected, got " + format_double(value));
}

ExtendedScalar ExtendedScalar::from_numeric(double value, const SemiringSpec& spec) {
    if (std::isnan(value))
        throw Error(ErrorKind::InvalidArgument, "NaN is not a semiring value");
    if (std::isinf(value)) {
        const bool zero_side = spec.kind() == SemiringKind::MinPlus ? value > 0 : value < 0;
        return zero_side ? bottom() : top();
    }
    return ExtendedScalar(value);
}

double ExtendedScalar::value() const {
    if (tag_ != Tag::Finite)
        throw Error(ErrorKind::InvalidArgument, "value() on a non-finite semiring element");
    return value_;
}

double ExtendedScalar::to_numeric(const SemiringSpec& spec) const noexcept {
    const double sign = spec.kind() == SemiringKind::MinPlus ? 1.0 : -1.0;
    switch (tag_) {
    case Tag::Finite: return value_;
    case Tag::Bottom: return sign * kInf;
    case Tag::Top: return -sign * kInf;
    }
    return value_;
}

ExtendedScalar zero(const SemiringSpec&) noexcept { return ExtendedScalar::bottom(); }

ExtendedScalar one(const SemiringSpec&) noexcept { return ExtendedScalar(0.0); }

double subtropical_sum(double u, double v, double h) noexcept {
    const double hi = std::max(u, v);
    return hi + h * std::log1p(std::exp(-std::abs(u - v) / h));
}

ExtendedScalar add(const ExtendedScalar& a, const ExtendedScalar& b, const SemiringSpec& s) {
    if (a.is_bottom())
        return b;
    if (b.is_bottom())
        return a;
    if (a.is_top() || b.is_top())
        return ExtendedScalar::top();
    const double x = a.value();
    const double y = b.value();
    switch (s.kind()) {
    case SemiringKind::MaxPlus: return std::max(x, y);
    case SemiringKind::MinPlus: return std::min(x, y);
    case SemiringKind::SubtropicalH: return subtropical_sum(x, y, s.h());
    }
    return a;
}

ExtendedScalar mul(const ExtendedScalar& a, const ExtendedScalar& b, const SemiringSpec&) {
    if (a.is_bottom() || b.is_bottom())
        return ExtendedScalar::bottom();
    if (a.is_top() || b.is_top())
        return ExtendedScalar::top();
    return a.value() + b.value();
}

bool leq(const ExtendedScalar& a, const ExtendedScalar& b, const SemiringSpec& s) {
    require_idempotent(s, "leq");
    return add(a, b, s) == b;
}

ExtendedScalar scalar_star(const ExtendedScalar& a, const SemiringSpec& s) {
    require_idempotent(s, "scalar_star");
    if (a.is_bottom())
        return one(s);
    const bool bounded = a.is_finite() &&
                         (s.kind() == SemiringKind::MaxPlus ? a.value() <= 0.0 : a.value() >= 0.0);
    if (!bounded)
        throw Error(ErrorKind::Divergent,
                    "star of " + format_scalar(a, s) + " is unbounded in " + s.name());
    return one(s);
}

double dequantized_add_limit_gap(double u, double v, double h) {
    if (!std::isfinite(u) || !std::isfinite(v))
        throw Error(ErrorKind::InvalidArgument, "finite arguments required");
    if (!(h > 0.0))
        throw Error(ErrorKind::InvalidArgument, "h must be positive");
    // The correction term itself, not a difference of two large numbers.
    return h * std::log1p(std::exp(-std::abs(u - v) / h));
}

std::string format_scalar(const ExtendedScalar& a, const SemiringSpec& s) {
    return format_double(a.to_numeric(s));
}

ExtendedScalar parse_scalar(std::string_view token, const SemiringSpec& s) {
    return ExtendedScalar::from_numeric(parse_double(token), s);
}

} // namespace tropic
