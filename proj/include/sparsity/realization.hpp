#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsity/fields.hpp"
#include "sparsity/hypergraph.hpp"
#include "sparsity/matrix.hpp"
#include "sparsity/oracle.hpp"
#include "sparsity/rng.hpp"

namespace sparsity {

// Allowed nonzero columns per edge row: the k consecutive columns of each
// endpoint, so row e supports k*|e| of the k*n columns.
struct SupportPattern {
    int columns = 0;
    std::vector<std::vector<int>> row_columns;
};

inline SupportPattern build_pattern(const Hypergraph& g, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    SupportPattern pattern;
    pattern.columns = k * g.vertex_count();
    pattern.row_columns.reserve(static_cast<std::size_t>(g.edge_count()));
    for (const Hyperedge& e : g.edges()) {
        std::vector<int> cols;
        cols.reserve(static_cast<std::size_t>(k * e.size()));
        for (VertexId v : e.endpoints())
            for (int j = 0; j < k; ++j) cols.push_back(k * v + j);
        pattern.row_columns.push_back(std::move(cols));
    }
    return pattern;
}

// An edge-rows-by-(k*n)-columns matrix whose nonzero entries respect the
// support pattern, together with the constraint block it was solved against:
// row e annihilates the first row_constraints[e] columns of `constraints`,
// exactly, in the recorded field.
template <class Field>
struct Realization {
    Matrix<Field> matrix;
    Matrix<Field> constraints;        // k*n rows; uniform builds have ell columns
    std::vector<int> row_constraints;  // per-row number of constraint columns
    SupportPattern pattern;
    SparsityParams params;
    std::vector<int> level_ells;  // nonempty for graded builds
    std::uint64_t seed = 0;
    std::uint64_t modulus = 0;  // 0 = rationals
};

namespace detail {

inline SparsityParams describe(const Hypergraph& g, int k, int ell) {
    const int size = g.min_edge_size();
    if (size > 0 && g.is_uniform(size)) return SparsityParams{k, ell, size, true};
    return SparsityParams{k, ell, 2, false};
}

// Streams: constraint matrix from (seed, 0), row e from (seed, e+1), so rows
// can be reproduced independently and in any order.
inline Rng constraint_stream(std::uint64_t seed) { return Rng(derive_seed(seed, 0)); }
inline Rng row_stream(std::uint64_t seed, int row) {
    return Rng(derive_seed(seed, static_cast<std::uint64_t>(row) + 1));
}

// Draws a constraint block whose column-prefixes all have full rank. A
// deficient draw is astronomically unlikely; redrawing keeps the rank
// ceiling min(m, kn - ell) unconditional.
template <class Field>
Matrix<Field> sample_constraints(std::size_t kn, const std::vector<int>& prefix_cols,
                                 const Field& field, Rng& rng) {
    const std::size_t total = prefix_cols.empty() ? 0 : static_cast<std::size_t>(prefix_cols.back());
    for (int attempt = 0; attempt < 64; ++attempt) {
        Matrix<Field> u = random_matrix(kn, total, field, rng);
        bool ok = true;
        for (int cols : prefix_cols) {
            Matrix<Field> prefix(field, kn, static_cast<std::size_t>(cols));
            for (std::size_t r = 0; r < kn; ++r)
                for (std::size_t c = 0; c < static_cast<std::size_t>(cols); ++c) prefix(r, c) = u(r, c);
            if (matrix_rank(prefix) != std::min(kn, static_cast<std::size_t>(cols))) {
                ok = false;
                break;
            }
        }
        if (ok) return u;
    }
    throw std::runtime_error("could not sample a full-rank constraint block");
}

// Fills row e with a random combination of a basis of the local solution
// space: vectors over e's support annihilating the first `ell` constraint
// columns. The local space has dimension >= k*|e| - ell >= 1.
template <class Field>
void solve_row(Matrix<Field>& m, const std::vector<int>& support, int row, int ell,
               const Matrix<Field>& constraints, const Field& field, Rng& rng) {
    const std::size_t width = support.size();
    if (ell == 0) {
        for (std::size_t i = 0; i < width; ++i)
            m(static_cast<std::size_t>(row), static_cast<std::size_t>(support[i])) = field.random(rng);
        return;
    }
    Matrix<Field> local(field, static_cast<std::size_t>(ell), width);
    for (std::size_t i = 0; i < width; ++i)
        for (int c = 0; c < ell; ++c)
            local(static_cast<std::size_t>(c), i) =
                constraints(static_cast<std::size_t>(support[i]), static_cast<std::size_t>(c));
    const Matrix<Field> basis = nullspace(std::move(local));
    if (basis.cols() < width - static_cast<std::size_t>(ell) || basis.cols() == 0)
        throw std::logic_error("local solution space below its dimension count");
    std::vector<typename Field::value_type> coeff;
    coeff.reserve(basis.cols());
    for (std::size_t j = 0; j < basis.cols(); ++j) coeff.push_back(field.random(rng));
    for (std::size_t i = 0; i < width; ++i) {
        auto v = field.zero();
        for (std::size_t j = 0; j < basis.cols(); ++j) v = field.add(v, field.mul(coeff[j], basis(i, j)));
        m(static_cast<std::size_t>(row), static_cast<std::size_t>(support[i])) = v;
    }
}

}  // namespace detail

// Support pattern filled with independent random field elements; all
// off-pattern entries are exactly zero.
template <class Field>
Realization<Field> realize_k0(const Hypergraph& g, int k, const Field& field, std::uint64_t seed) {
    SupportPattern pattern = build_pattern(g, k);
    const std::size_t kn = static_cast<std::size_t>(pattern.columns);
    Matrix<Field> m(field, static_cast<std::size_t>(g.edge_count()), kn);
    for (int e = 0; e < g.edge_count(); ++e) {
        Rng rng = detail::row_stream(seed, e);
        detail::solve_row(m, pattern.row_columns[static_cast<std::size_t>(e)], e, 0,
                          Matrix<Field>(field, kn, 0), field, rng);
    }
    return Realization<Field>{std::move(m),
                              Matrix<Field>(field, kn, 0),
                              std::vector<int>(static_cast<std::size_t>(g.edge_count()), 0),
                              std::move(pattern),
                              detail::describe(g, k, 0),
                              {},
                              seed,
                              field.modulus()};
}

// Deterministic 0/1 specialization from a k-regular orientation: the j-th edge
// tailed at vertex v puts its single 1 in column k*v + j. The result is a
// permutation matrix up to row order, hence of rank k*n over any field.
template <class Field>
Realization<Field> specialize_identity(const Hypergraph& g, int k, const Orientation& o,
                                       const Field& field) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (static_cast<int>(o.tail.size()) != g.edge_count())
        throw std::invalid_argument("orientation size does not match edge count");
    if (g.edge_count() != k * g.vertex_count())
        throw std::invalid_argument("identity specialization requires m = k*n");
    SupportPattern pattern = build_pattern(g, k);
    const std::size_t kn = static_cast<std::size_t>(pattern.columns);
    Matrix<Field> m(field, static_cast<std::size_t>(g.edge_count()), kn);
    std::vector<int> used(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        const VertexId v = o.tail[static_cast<std::size_t>(e)];
        if (v < 0 || !g.edge(e).contains(v))
            throw std::invalid_argument("tail of edge " + std::to_string(e) + " is not one of its endpoints");
        int& j = used[static_cast<std::size_t>(v)];
        if (j >= k)
            throw std::invalid_argument("vertex " + std::to_string(v) + " is the tail of more than k edges");
        m(static_cast<std::size_t>(e), static_cast<std::size_t>(k * v + j)) = field.one();
        ++j;
    }
    return Realization<Field>{std::move(m),
                              Matrix<Field>(field, kn, 0),
                              std::vector<int>(static_cast<std::size_t>(g.edge_count()), 0),
                              std::move(pattern),
                              detail::describe(g, k, 0),
                              {},
                              0,
                              field.modulus()};
}

// General (k, ell) realization: sample one random constraint block of ell
// columns, then solve every row independently inside its own support. With
// ell = 0 this reduces to realize_k0.
template <class Field>
Realization<Field> realize_kl(const Hypergraph& g, const SparsityParams& p, const Field& field,
                              std::uint64_t seed) {
    p.validate_for(g);
    if (p.ell == 0) {
        Realization<Field> r = realize_k0(g, p.k, field, seed);
        r.params = p;
        return r;
    }
    SupportPattern pattern = build_pattern(g, p.k);
    const std::size_t kn = static_cast<std::size_t>(pattern.columns);
    Rng constraint_rng = detail::constraint_stream(seed);
    Matrix<Field> constraints =
        detail::sample_constraints(kn, std::vector<int>{p.ell}, field, constraint_rng);
    Matrix<Field> m(field, static_cast<std::size_t>(g.edge_count()), kn);
    for (int e = 0; e < g.edge_count(); ++e) {
        Rng rng = detail::row_stream(seed, e);
        detail::solve_row(m, pattern.row_columns[static_cast<std::size_t>(e)], e, p.ell, constraints,
                          field, rng);
    }
    return Realization<Field>{std::move(m),
                              std::move(constraints),
                              std::vector<int>(static_cast<std::size_t>(g.edge_count()), p.ell),
                              std::move(pattern),
                              p,
                              {},
                              seed,
                              field.modulus()};
}

// Graded realization: nested constraint blocks, ells[i] columns for level i
// with ells[i+1] - ells[i] fresh columns on top of level i's block; each row
// is solved against the block of its deepest grading level. Requires the
// counts to be non-decreasing so the nesting is well-formed.
template <class Field>
Realization<Field> realize_graded(const Hypergraph& g, const Grading& grading, int k,
                                  const std::vector<int>& ells, const Field& field,
                                  std::uint64_t seed) {
    detail::check_graded_args(g, grading, k, ells);
    for (std::size_t i = 1; i < ells.size(); ++i)
        if (ells[i] < ells[i - 1])
            throw std::invalid_argument("graded counts must be non-decreasing, got " +
                                        std::to_string(ells[i - 1]) + " then " + std::to_string(ells[i]));
    SupportPattern pattern = build_pattern(g, k);
    const std::size_t kn = static_cast<std::size_t>(pattern.columns);
    Rng constraint_rng = detail::constraint_stream(seed);
    std::vector<int> prefixes;
    for (int ell : ells)
        if (ell > 0 && (prefixes.empty() || ell != prefixes.back())) prefixes.push_back(ell);
    Matrix<Field> constraints = detail::sample_constraints(kn, prefixes, field, constraint_rng);
    Matrix<Field> m(field, static_cast<std::size_t>(g.edge_count()), kn);
    std::vector<int> row_constraints(static_cast<std::size_t>(g.edge_count()), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        const int level = grading.deepest_level(e);
        row_constraints[static_cast<std::size_t>(e)] = ells[static_cast<std::size_t>(level)];
        Rng rng = detail::row_stream(seed, e);
        detail::solve_row(m, pattern.row_columns[static_cast<std::size_t>(e)], e,
                          row_constraints[static_cast<std::size_t>(e)], constraints, field, rng);
    }
    return Realization<Field>{std::move(m),
                              std::move(constraints),
                              std::move(row_constraints),
                              std::move(pattern),
                              detail::describe(g, k, ells.empty() ? 0 : ells.front()),
                              ells,
                              seed,
                              field.modulus()};
}

// Regression guard: every nonzero entry sits inside the declared support, and
// each row annihilates its constraint columns exactly.
template <class Field>
bool verify_pattern(const Realization<Field>& r, const Hypergraph& g, int k) {
    const SupportPattern pattern = build_pattern(g, k);
    const std::size_t kn = static_cast<std::size_t>(pattern.columns);
    if (r.matrix.rows() != static_cast<std::size_t>(g.edge_count()) || r.matrix.cols() != kn ||
        r.constraints.rows() != kn || r.row_constraints.size() != r.matrix.rows())
        throw std::invalid_argument("realization dimensions do not match the hypergraph");
    const Field& f = r.matrix.field();
    for (std::size_t e = 0; e < r.matrix.rows(); ++e) {
        const auto& support = pattern.row_columns[e];
        std::size_t next = 0;
        for (std::size_t c = 0; c < kn; ++c) {
            const bool allowed = next < support.size() && static_cast<std::size_t>(support[next]) == c;
            if (allowed) ++next;
            if (!allowed && !f.is_zero(r.matrix(e, c))) return false;
        }
        const int ell = r.row_constraints[e];
        if (ell > static_cast<int>(r.constraints.cols())) return false;
        for (int c = 0; c < ell; ++c) {
            auto dot = f.zero();
            for (int col : support)
                dot = f.add(dot, f.mul(r.matrix(e, static_cast<std::size_t>(col)),
                                       r.constraints(static_cast<std::size_t>(col),
                                                     static_cast<std::size_t>(c))));
            if (!f.is_zero(dot)) return false;
        }
    }
    return true;
}

}  // namespace sparsity
