#pragma once

/**
 * @file matrix.hpp
 * @brief Dense matrices over a semiring, Kleene closure and Bellman solvers.
 *
 * The Bellman equation X = H (x) X (+) F has the least solution X = H* (x) F
 * whenever the closure H* = I (+) H (+) H^2 (+) ... exists. Three routes are
 * provided: Floyd-Warshall-Kleene elimination, Jacobi iteration (Bellman's
 * algorithm) and Gauss-Seidel iteration (Ford's algorithm).
 */

#include "tropic/error.hpp"
#include "tropic/semiring.hpp"

#include <cstddef>
#include <vector>

namespace tropic {

class SemiringMatrix {
public:
    /// rows x cols matrix filled with the semiring zero.
    SemiringMatrix(std::size_t rows, std::size_t cols, SemiringSpec spec);
    /// Row-major entries; throws ShapeMismatch if the size is wrong.
    SemiringMatrix(std::size_t rows, std::size_t cols, std::vector<ExtendedScalar> entries,
                   SemiringSpec spec);

    static SemiringMatrix zero(std::size_t rows, std::size_t cols, SemiringSpec spec) {
        return SemiringMatrix(rows, cols, spec);
    }
    static SemiringMatrix identity(std::size_t n, SemiringSpec spec);
    /// n x 1 column with the unit at `index` and zero elsewhere.
    static SemiringMatrix unit_column(std::size_t n, std::size_t index, SemiringSpec spec);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const SemiringSpec& spec() const noexcept { return spec_; }

    const ExtendedScalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    ExtendedScalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    const std::vector<ExtendedScalar>& entries() const noexcept { return entries_; }

    SemiringMatrix transposed() const;

    bool operator==(const SemiringMatrix&) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<ExtendedScalar> entries_;
    SemiringSpec spec_;
};

struct Edge {
    std::size_t source;
    std::size_t target;
    double weight;
};

class WeightedDigraph {
public:
    explicit WeightedDigraph(std::size_t node_count) : node_count_(node_count) {}
    /// Throws InvalidArgument for out-of-range endpoints or non-finite weights.
    WeightedDigraph(std::size_t node_count, std::vector<Edge> edges);

    void add_edge(std::size_t source, std::size_t target, double weight);

    std::size_t node_count() const noexcept { return node_count_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    /// A(i, j) = (+) of the weights of all edges i -> j.
    SemiringMatrix adjacency(const SemiringSpec& spec) const;

private:
    std::size_t node_count_;
    std::vector<Edge> edges_;
};

SemiringMatrix mat_add(const SemiringMatrix& a, const SemiringMatrix& b);
SemiringMatrix mat_mul(const SemiringMatrix& a, const SemiringMatrix& b);

/// H* by in-place Floyd-Warshall-Kleene elimination. Throws DivergentClosure.
SemiringMatrix kleene_closure(const SemiringMatrix& h);

/// Least solution of X = H X (+) F, checked against the equation before returning.
SemiringMatrix solve_bellman(const SemiringMatrix& h, const SemiringMatrix& f);

struct IterationResult {
    SemiringMatrix solution;
    std::size_t iterations;
};

/// Raised when an iteration exhausts its budget; keeps the last iterate.
class NotConverged : public Error {
public:
    NotConverged(SemiringMatrix last, std::size_t iterations);

    const SemiringMatrix& last_iterate() const noexcept { return last_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    SemiringMatrix last_;
    std::size_t iterations_;
};

/// X_{k+1} = H X_k (+) F until X_{k+1} == X_k exactly.
IterationResult jacobi_iterate(const SemiringMatrix& h, const SemiringMatrix& f,
                               const SemiringMatrix& x0, std::size_t max_iters);

/// In-place sweeps in ascending row order; rows updated earlier in a sweep are
/// used immediately by later rows.
IterationResult gauss_seidel_iterate(const SemiringMatrix& h, const SemiringMatrix& f,
                                     const SemiringMatrix& x0, std::size_t max_iters);

/// Single-source distances over `spec` (MinPlus: shortest, MaxPlus: longest).
/// Unreachable nodes are the semiring zero.
std::vector<ExtendedScalar> shortest_paths(const WeightedDigraph& g, std::size_t source,
                                           const SemiringSpec& spec = SemiringSpec::min_plus());

} // namespace tropic
