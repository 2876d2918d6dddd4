#pragma once

/**
 * @file dequantize.hpp
 * @brief The dequantization transform f_h(x) = h log|f(exp(x/h))| of generalized
 * polynomials, its h -> 0 limit, and Newton sets.
 *
 * A generalized polynomial is a finite sum of monomials a * z^d with nonzero
 * complex coefficients a and real exponent vectors d. As h -> 0 the transform
 * of a*z^d is exactly d.x + h log|a|, so the limit of a sum is the max-plus
 * polynomial x -> max_d d.x, whose subdifferential at 0 is conv{d}: the
 * Newton polytope.
 */

#include "tropic/polytope.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tropic {

using Complex = std::complex<double>;

struct Monomial {
    Complex coeff;
    std::vector<double> exponent;
};

class GeneralizedPolynomial {
public:
    /// Merges terms with bit-identical exponents and drops zero coefficients.
    /// Throws InvalidArgument on dimension mismatch or non-finite data.
    GeneralizedPolynomial(std::size_t dim, std::vector<Monomial> terms);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Monomial>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    /// Coefficients all real and nonnegative.
    bool has_nonnegative_coefficients() const noexcept;

    friend GeneralizedPolynomial operator*(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g);
    friend GeneralizedPolynomial operator+(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g);

private:
    std::size_t dim_;
    std::vector<Monomial> terms_;
};

/// Largest exponent of a 1-D polynomial.
double degree(const GeneralizedPolynomial& f);

/// sum a * prod z_i^{d_i} for z with positive entries. Throws NonpositiveArgument.
Complex eval(const GeneralizedPolynomial& f, std::span<const double> z);

/// h log|f(exp(x/h))| via a shifted log-sum-exp with phase tracking.
/// Throws ZeroValue when the sum cancels to rounding level.
double dequantize_h(const GeneralizedPolynomial& f, std::span<const double> x, double h);

/// The same transform for an arbitrary positive-valued function of z, evaluated
/// directly (no log-space protection).
double dequantize_callback(const std::function<double(std::span<const double>)>& f,
                           std::span<const double> x, double h);

struct TropicalTerm {
    double constant;
    std::vector<double> slope;
};

/// x -> max over terms of (slope . x + constant).
class TropicalPolynomial {
public:
    explicit TropicalPolynomial(std::vector<TropicalTerm> terms);

    const std::vector<TropicalTerm>& terms() const noexcept { return terms_; }
    double operator()(std::span<const double> x) const;

    /// Indices of terms attaining the max within `tolerance`.
    std::vector<std::size_t> maximizers(std::span<const double> x, double tolerance) const;

private:
    std::vector<TropicalTerm> terms_;
};

/// The h -> 0 limit: every constant is 0.
TropicalPolynomial tropicalize(const GeneralizedPolynomial& f);

/// Constants log|a| kept: the tropical polynomial seen through Log_h after the
/// coefficient deformation a -> |a|^{1/h}.
TropicalPolynomial tropicalize_with_log_coefficients(const GeneralizedPolynomial& f);

/// conv of the exponent vectors. Throws DimensionUnsupported for dim > 3.
Polytope newton_set(const GeneralizedPolynomial& f);

struct ProductCheck {
    double max_deviation = 0.0;
    std::size_t samples = 0;
    bool passed = false;  // max_deviation <= 1e-9
};

struct DequantizeSample {
    std::vector<double> x;
    double h;
};

/// Transform of the expanded product f*g against the sum of the transforms.
ProductCheck check_hom_product(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                               std::span<const DequantizeSample> samples);

struct SumCheck {
    std::vector<double> h;
    std::vector<double> gap;    // |(f+g)_h - max(f_h, g_h)|
    std::vector<double> bound;  // h log T
    std::size_t term_count = 0;
    bool nonnegative = false;
    bool general_position = false;  // limits of f and g differ by more than 1e-9 at x
    bool within_bound = false;
    bool decreasing = false;  // gap nonincreasing along h
};

SumCheck check_hom_sum(const GeneralizedPolynomial& f, const GeneralizedPolynomial& g,
                       std::span<const double> x, std::span<const double> h_sequence);

/// True when two distinct terms of the limit polynomial come within 1e-9 of
/// each other at the top value at x (the measure-zero tie set).
bool is_tropical_tie(const GeneralizedPolynomial& f, std::span<const double> x, double tolerance = 1e-9);

} // namespace tropic
