#pragma once

/**
 * @file polytope.hpp
 * @brief The idempotent semiring of convex polytopes in R^1..R^3:
 * P (+) Q = conv(P u Q), P (x) Q = P + Q (Minkowski sum), unit {0}.
 *
 * Polytopes are kept in canonical vertex form: extreme points only, sorted
 * lexicographically (1-D, 3-D) or counterclockwise from the lexicographically
 * smallest vertex (2-D, full-dimensional). Coordinates within 1e-9 compare equal.
 */

#include <cstddef>
#include <string>
#include <vector>

namespace tropic {

using Point = std::vector<double>;

inline constexpr double kGeomTolerance = 1e-9;

double dot(const Point& a, const Point& b);

class Polytope {
public:
    /// Canonical hull of `points`. Throws InvalidArgument for an empty set or
    /// mixed dimensions, DimensionUnsupported outside 1..3.
    static Polytope hull(const std::vector<Point>& points);
    static Polytope point(Point p) { return hull({std::move(p)}); }

    int dim() const noexcept { return dim_; }
    const std::vector<Point>& vertices() const noexcept { return vertices_; }

    /// Canonical vertex lists equal within kGeomTolerance.
    bool operator==(const Polytope& other) const;

private:
    Polytope(int dim, std::vector<Point> vertices) : dim_(dim), vertices_(std::move(vertices)) {}

    int dim_;
    std::vector<Point> vertices_;
};

/// Extreme points of `points` in canonical order.
std::vector<Point> canonical_vertices(const std::vector<Point>& points);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope hull_union(const Polytope& p, const Polytope& q);
double support_function(const Polytope& p, const Point& direction);

/// Equality by support values on a fixed set of 64 probe directions plus equal
/// vertex counts.
bool equal_by_support(const Polytope& p, const Polytope& q);

/// Max of finitely many linear functionals x -> v . x.
class SublinearFunction {
public:
    /// Throws InvalidArgument for an empty list or mixed dimensions.
    explicit SublinearFunction(std::vector<Point> pieces);

    const std::vector<Point>& pieces() const noexcept { return pieces_; }
    int dim() const noexcept { return static_cast<int>(pieces_.front().size()); }
    double operator()(const Point& x) const;

    /// Pointwise sum: pieces are all sums v1 + v2.
    friend SublinearFunction operator+(const SublinearFunction& a, const SublinearFunction& b);
    /// Pointwise max: union of pieces.
    friend SublinearFunction pointwise_max(const SublinearFunction& a, const SublinearFunction& b);

private:
    std::vector<Point> pieces_;
};

/// The subdifferential at the origin, conv{pieces}.
Polytope subdifferential_at_origin(const SublinearFunction& p);

/// The support function of P as a sublinear function (pieces = vertices).
SublinearFunction support_sublinear(const Polytope& p);

struct LawReport {
    std::vector<std::string> checked;
};

/// Checks the semiring identities on (P, Q, R) and the subdifferential
/// homomorphism for their support functions. Throws LawViolation naming the
/// first identity that fails.
LawReport semiring_law_check(const Polytope& p, const Polytope& q, const Polytope& r);

/// 64 integer probe directions in dimension `dim` (shared by the equality test
/// and the support-function identity checks).
std::vector<Point> probe_directions(int dim);

} // namespace tropic
