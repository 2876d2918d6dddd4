#pragma once

/**
 * @file amoeba.hpp
 * @brief Amoebas of plane curves under the coefficient deformation
 * a -> sign(a) |a|^{1/h}, and the tropical curve they converge to.
 *
 * Log_h(x, y) = (h log|x|, h log|y|). Writing x = exp(X/h), a monomial
 * |a|^{1/h} x^i y^j has modulus exp((iX + jY + log|a|)/h), so the zero sets of
 * the deformed curves concentrate on the corner locus of
 * max_{(i,j)} (iX + jY + log|a_ij|).
 */

#include "tropic/dequantize.hpp"

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

namespace tropic {

using Vec2 = std::array<double, 2>;

/// Real-coefficient polynomial in two variables with integer exponents.
class PlaneCurve {
public:
    /// Throws InvalidArgument unless f is 2-D with real coefficients and integer
    /// exponents, and DegenerateCurve for fewer than two terms.
    explicit PlaneCurve(GeneralizedPolynomial f);

    const GeneralizedPolynomial& polynomial() const noexcept { return f_; }

private:
    GeneralizedPolynomial f_;
};

/// f_h with coefficients sign(a) |a|^{1/h}; deform(f, 1) == f.
PlaneCurve deform(const PlaneCurve& f, double h);

struct Window {
    double x0 = -3.0, x1 = 3.0, y0 = -3.0, y1 = 3.0;

    bool contains(const Vec2& p) const noexcept { return p[0] >= x0 && p[0] <= x1 && p[1] >= y0 && p[1] <= y1; }
};

struct AmoebaOptions {
    std::size_t radial_samples = 200;  // log-radius lattice size per pass
    std::size_t angular_samples = 32;  // argument lattice size
    Window window;                     // X-range of the lattice, Y-filter of the output
    bool both_axes = true;             // also parametrize by y and solve for x
};

struct AmoebaSample {
    std::vector<Vec2> points;
    std::vector<std::array<Complex, 2>> preimages;  // (x, y) on V(f_h) behind each point
    std::size_t columns = 0;
    std::size_t rootless_columns = 0;
    std::size_t rejected_roots = 0;  // roots whose residual check failed
    double max_residual = 0.0;       // |f_h(x, y)| / sum |terms| over emitted points
};

/// Log_h images of points of V(f_h) on a log-radius x argument lattice.
/// Columns without roots are skipped; throws DegenerateCurve if none has one.
AmoebaSample sample_amoeba(const PlaneCurve& f, double h, const AmoebaOptions& options = {});

/// Piece of the corner locus: base + t * direction for t in [t_min, t_max].
struct TropicalEdge {
    Vec2 base;
    Vec2 direction;  // primitive integer vector
    double t_min = 0.0;
    double t_max = std::numeric_limits<double>::infinity();
    int weight = 1;  // lattice length of the dual edge
    std::size_t term_a = 0;
    std::size_t term_b = 0;
};

struct TropicalCurve {
    std::vector<TropicalEdge> edges;
    std::vector<Vec2> vertices;
};

/// Corner locus of max_d (d.X + c_d) with c_d = log|a_d| (or 0 when
/// `with_coefficients` is false).
TropicalCurve tropical_curve(const PlaneCurve& f, bool with_coefficients = true);

/// Largest violation |sum weight * outgoing direction| over all vertices.
double balancing_defect(const TropicalCurve& curve);

/// Parts of the edges inside the window, as endpoint pairs.
std::vector<std::array<Vec2, 2>> clipped_segments(const TropicalCurve& curve, const Window& window);

/// Dense sampling of the curve inside the window (spacing `resolution`).
std::vector<Vec2> sample_curve(const TropicalCurve& curve, const Window& window, double resolution);

/// Symmetric Hausdorff distance between the points of A in the window and the
/// part of the curve in the window. Throws EmptyWindow if either side is empty.
double hausdorff_distance(const std::vector<Vec2>& a, const TropicalCurve& b, const Window& window,
                          double resolution = 0.005);

} // namespace tropic
