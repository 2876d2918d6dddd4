#include "tropic/matrix.hpp"

#include "tropic/format.hpp"

#include <cmath>
#include <string>

namespace tropic {

namespace {

std::string shape_of(const SemiringMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_spec(const SemiringMatrix& a, const SemiringMatrix& b) {
    if (a.spec() != b.spec())
        throw Error(ErrorKind::SpecMismatch, a.spec().name() + " vs " + b.spec().name());
}

void require_idempotent(const SemiringSpec& s) {
    if (!s.idempotent())
        throw Error(ErrorKind::InvalidArgument, "closure needs an idempotent semiring, got " + s.name());
}

// One Jacobi application: H x (+) F.
SemiringMatrix bellman_map(const SemiringMatrix& h, const SemiringMatrix& x, const SemiringMatrix& f) {
    return mat_add(mat_mul(h, x), f);
}

void check_bellman_shapes(const SemiringMatrix& h, const SemiringMatrix& f, const SemiringMatrix* x0) {
    require_same_spec(h, f);
    if (h.rows() != h.cols())
        throw Error(ErrorKind::ShapeMismatch, "H must be square, got " + shape_of(h));
    if (f.rows() != h.rows())
        throw Error(ErrorKind::ShapeMismatch, "F is " + shape_of(f) + ", H is " + shape_of(h));
    if (x0 != nullptr) {
        require_same_spec(h, *x0);
        if (x0->rows() != f.rows() || x0->cols() != f.cols())
            throw Error(ErrorKind::ShapeMismatch, "X0 is " + shape_of(*x0) + ", F is " + shape_of(f));
    }
}

} // namespace

SemiringMatrix::SemiringMatrix(std::size_t rows, std::size_t cols, SemiringSpec spec)
    : rows_(rows), cols_(cols), entries_(rows * cols, tropic::zero(spec)), spec_(spec) {}

SemiringMatrix::SemiringMatrix(std::size_t rows, std::size_t cols, std::vector<ExtendedScalar> entries,
                               SemiringSpec spec)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), spec_(spec) {
    if (entries_.size() != rows * cols)
        throw Error(ErrorKind::ShapeMismatch, std::to_string(entries_.size()) + " entries for a " +
                                                  std::to_string(rows) + "x" + std::to_string(cols) +
                                                  " matrix");
}

SemiringMatrix SemiringMatrix::identity(std::size_t n, SemiringSpec spec) {
    SemiringMatrix m(n, n, spec);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = one(spec);
    return m;
}

SemiringMatrix SemiringMatrix::unit_column(std::size_t n, std::size_t index, SemiringSpec spec) {
    if (index >= n)
        throw Error(ErrorKind::InvalidArgument, "unit index " + std::to_string(index) + " out of range");
    SemiringMatrix m(n, 1, spec);
    m(index, 0) = one(spec);
    return m;
}

SemiringMatrix SemiringMatrix::transposed() const {
    SemiringMatrix t(cols_, rows_, spec_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

WeightedDigraph::WeightedDigraph(std::size_t node_count, std::vector<Edge> edges) : node_count_(node_count) {
    edges_.reserve(edges.size());
    for (const auto& e : edges)
        add_edge(e.source, e.target, e.weight);
}

void WeightedDigraph::add_edge(std::size_t source, std::size_t target, double weight) {
    if (source >= node_count_ || target >= node_count_)
        throw Error(ErrorKind::InvalidArgument, "edge " + std::to_string(source) + "->" +
                                                    std::to_string(target) + " outside " +
                                                    std::to_string(node_count_) + " nodes");
    if (!std::isfinite(weight))
        throw Error(ErrorKind::InvalidArgument, "edge weight must be finite");
    edges_.push_back({source, target, weight});
}

SemiringMatrix WeightedDigraph::adjacency(const SemiringSpec& spec) const {
    SemiringMatrix a(node_count_, node_count_, spec);
    for (const auto& e : edges_)
        a(e.source, e.target) = add(a(e.source, e.target), e.weight, spec);
    return a;
}

SemiringMatrix mat_add(const SemiringMatrix& a, const SemiringMatrix& b) {
    require_same_spec(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::ShapeMismatch, shape_of(a) + " (+) " + shape_of(b));
    SemiringMatrix c(a.rows(), a.cols(), a.spec());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = add(a(i, j), b(i, j), a.spec());
    return c;
}

SemiringMatrix mat_mul(const SemiringMatrix& a, const SemiringMatrix& b) {
    require_same_spec(a, b);
    if (a.cols() != b.rows())
        throw Error(ErrorKind::ShapeMismatch, shape_of(a) + " (x) " + shape_of(b));
    const auto& s = a.spec();
    SemiringMatrix c(a.rows(), b.cols(), s);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (aik.is_bottom())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = add(c(i, j), mul(aik, b(k, j), s), s);
        }
    }
    return c;
}

SemiringMatrix kleene_closure(const SemiringMatrix& h) {
    require_idempotent(h.spec());
    if (h.rows() != h.cols())
        throw Error(ErrorKind::ShapeMismatch, "closure of a non-square " + shape_of(h) + " matrix");
    const auto& s = h.spec();
    const std::size_t n = h.rows();
    SemiringMatrix a = h;
    for (std::size_t k = 0; k < n; ++k) {
        ExtendedScalar pivot_star;
        try {
            pivot_star = scalar_star(a(k, k), s);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Divergent)
                throw;
            throw Error(ErrorKind::DivergentClosure,
                        "cycle through node " + std::to_string(k) + " has weight " +
                            format_scalar(a(k, k), s) + " outside the convergence region of " +
                            s.name());
        }
        for (std::size_t i = 0; i < n; ++i) {
            const auto left = mul(a(i, k), pivot_star, s);
            if (left.is_bottom())
                continue;
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = add(a(i, j), mul(left, a(k, j), s), s);
        }
    }
    // a now holds H+ (paths of length >= 1); the empty path contributes I.
    return mat_add(SemiringMatrix::identity(n, s), a);
}

SemiringMatrix solve_bellman(const SemiringMatrix& h, const SemiringMatrix& f) {
    check_bellman_shapes(h, f, nullptr);
    require_idempotent(h.spec());
    SemiringMatrix x = mat_mul(kleene_closure(h), f);
    // Elimination and iteration associate the path sums differently; for inputs
    // that are not exactly representable a few Jacobi passes settle the last ulp.
    for (std::size_t pass = 0; pass <= h.rows(); ++pass) {
        SemiringMatrix next = bellman_map(h, x, f);
        if (next == x)
            return x;
        x = std::move(next);
    }
    throw Error(ErrorKind::ResidualMismatch, "closure solution does not satisfy X = H X (+) F");
}

NotConverged::NotConverged(SemiringMatrix last, std::size_t iterations)
    : Error(ErrorKind::NotConverged, "no fixpoint after " + std::to_string(iterations) + " iterations"),
      last_(std::move(last)),
      iterations_(iterations) {}

IterationResult jacobi_iterate(const SemiringMatrix& h, const SemiringMatrix& f, const SemiringMatrix& x0,
                               std::size_t max_iters) {
    check_bellman_shapes(h, f, &x0);
    require_idempotent(h.spec());
    SemiringMatrix x = x0;
    for (std::size_t it = 1; it <= max_iters; ++it) {
        SemiringMatrix next = bellman_map(h, x, f);
        if (next == x)
            return {std::move(x), it};
        x = std::move(next);
    }
    throw NotConverged(std::move(x), max_iters);
}

IterationResult gauss_seidel_iterate(const SemiringMatrix& h, const SemiringMatrix& f,
                                     const SemiringMatrix& x0, std::size_t max_iters) {
    check_bellman_shapes(h, f, &x0);
    require_idempotent(h.spec());
    const auto& s = h.spec();
    const std::size_t n = h.rows();
    const std::size_t m = f.cols();
    SemiringMatrix x = x0;
    std::vector<ExtendedScalar> row(m);
    for (std::size_t sweep = 1; sweep <= max_iters; ++sweep) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j)
                row[j] = f(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                const auto& hik = h(i, k);
                if (hik.is_bottom())
                    continue;
                for (std::size_t j = 0; j < m; ++j)
                    row[j] = add(row[j], mul(hik, x(k, j), s), s);
            }
            for (std::size_t j = 0; j < m; ++j) {
                if (!(row[j] == x(i, j))) {
                    x(i, j) = row[j];
                    changed = true;
                }
            }
        }
        if (!changed)
            return {std::move(x), sweep};
    }
    throw NotConverged(std::move(x), max_iters);
}

std::vector<ExtendedScalar> shortest_paths(const WeightedDigraph& g, std::size_t source,
                                           const SemiringSpec& spec) {
    const std::size_t n = g.node_count();
    if (source >= n)
        throw Error(ErrorKind::InvalidArgument, "source " + std::to_string(source) + " out of range");
    // Transposed adjacency turns "distance to" into "distance from".
    const SemiringMatrix h = g.adjacency(spec).transposed();
    const SemiringMatrix x = solve_bellman(h, SemiringMatrix::unit_column(n, source, spec));
    std::vector<ExtendedScalar> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = x(i, 0);
    return out;
}

} // namespace tropic
