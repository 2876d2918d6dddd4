#pragma once

/**
 * @file semiring.hpp
 * @brief Idempotent semirings R_max, R_min and the subtropical deformation.
 *
 * Every value lives in ExtendedScalar: a finite double, the semiring zero
 * (bottom) or the completion element (top). Bottom and top are tags, never
 * IEEE infinities, so expressions such as bottom (x) bottom cannot yield NaN.
 *
 *   MaxPlus       a (+) b = max(a, b),  a (x) b = a + b,  zero = -inf, one = 0
 *   MinPlus       a (+) b = min(a, b),  a (x) b = a + b,  zero = +inf, one = 0
 *   Subtropical   a (+) b = h log(exp(a/h) + exp(b/h)),   zero = -inf, one = 0
 */

#include <cstdint>
#include <string>
#include <string_view>

namespace tropic {

enum class SemiringKind : std::uint8_t { MaxPlus, MinPlus, SubtropicalH };

class SemiringSpec {
public:
    static SemiringSpec max_plus() noexcept { return SemiringSpec(SemiringKind::MaxPlus, 0.0); }
    static SemiringSpec min_plus() noexcept { return SemiringSpec(SemiringKind::MinPlus, 0.0); }
    /// Throws InvalidArgument unless h is finite and positive.
    static SemiringSpec subtropical(double h);

    /// Accepts `maxplus`, `minplus` or `subtropical:<h>`.
    static SemiringSpec parse(std::string_view text);

    SemiringKind kind() const noexcept { return kind_; }
    /// Deformation parameter; 0 for the idempotent kinds.
    double h() const noexcept { return h_; }
    bool idempotent() const noexcept { return kind_ != SemiringKind::SubtropicalH; }

    std::string name() const;

    bool operator==(const SemiringSpec&) const = default;

private:
    SemiringSpec(SemiringKind kind, double h) noexcept : kind_(kind), h_(h) {}

    SemiringKind kind_;
    double h_;
};

class ExtendedScalar {
public:
    enum class Tag : std::uint8_t { Finite, Bottom, Top };

    /// Bottom by default.
    constexpr ExtendedScalar() noexcept = default;
    /// Finite value. Throws InvalidArgument on NaN or infinity.
    ExtendedScalar(double value);  // NOLINT(google-explicit-constructor)

    static constexpr ExtendedScalar bottom() noexcept { return ExtendedScalar(Tag::Bottom); }
    static constexpr ExtendedScalar top() noexcept { return ExtendedScalar(Tag::Top); }

    /// Maps an IEEE number to the scalar it denotes under `spec`: the infinity on
    /// the zero side becomes bottom, the other one top.
    static ExtendedScalar from_numeric(double value, const SemiringSpec& spec);

    Tag tag() const noexcept { return tag_; }
    bool is_finite() const noexcept { return tag_ == Tag::Finite; }
    bool is_bottom() const noexcept { return tag_ == Tag::Bottom; }
    bool is_top() const noexcept { return tag_ == Tag::Top; }

    /// Finite payload. Throws InvalidArgument for bottom/top.
    double value() const;
    /// Numeric reading under `spec` (bottom is -inf for MaxPlus, +inf for MinPlus).
    double to_numeric(const SemiringSpec& spec) const noexcept;

    bool operator==(const ExtendedScalar&) const = default;

private:
    constexpr explicit ExtendedScalar(Tag tag) noexcept : tag_(tag) {}

    Tag tag_ = Tag::Bottom;
    double value_ = 0.0;
};

ExtendedScalar zero(const SemiringSpec& s) noexcept;
ExtendedScalar one(const SemiringSpec& s) noexcept;

ExtendedScalar add(const ExtendedScalar& a, const ExtendedScalar& b, const SemiringSpec& s);
ExtendedScalar mul(const ExtendedScalar& a, const ExtendedScalar& b, const SemiringSpec& s);

/// Standard order a <= b  <=>  a (+) b = b. Rejects the subtropical spec.
bool leq(const ExtendedScalar& a, const ExtendedScalar& b, const SemiringSpec& s);

/// Kleene star 1 (+) a (+) a^2 (+) ... ; throws Divergent when unbounded.
ExtendedScalar scalar_star(const ExtendedScalar& a, const SemiringSpec& s);

/// (u (+)_h v) - max(u, v); always in [0, h log 2].
double dequantized_add_limit_gap(double u, double v, double h);

/// Stable evaluation of h log(exp(u/h) + exp(v/h)) for finite u, v.
double subtropical_sum(double u, double v, double h) noexcept;

/// Text token: `-inf`/`inf` for the infinite elements, %.12g otherwise.
std::string format_scalar(const ExtendedScalar& a, const SemiringSpec& s);
/// Inverse of format_scalar.
ExtendedScalar parse_scalar(std::string_view token, const SemiringSpec& s);

} // namespace tropic
