#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "sparsity/fields.hpp"
#include "sparsity/rng.hpp"

namespace sparsity {

// Dense row-major matrix over an exact field. Entries are kept in the field's
// canonical representation.
template <class Field>
class Matrix {
public:
    using value_type = typename Field::value_type;

    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, field_.zero()) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Field& field() const { return field_; }

    value_type& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const value_type& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && entries_ == other.entries_;
    }

    Matrix transposed() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    // Rows selected by index, in the given order.
    Matrix row_subset(const std::vector<std::size_t>& idx) const {
        Matrix s(field_, idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] >= rows_) throw std::out_of_range("row index out of range");
            for (std::size_t c = 0; c < cols_; ++c) s(i, c) = (*this)(idx[i], c);
        }
        return s;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> entries_;
};

template <class Field>
Matrix<Field> multiply(const Matrix<Field>& a, const Matrix<Field>& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in matrix product");
    const Field& f = a.field();
    Matrix<Field> c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (f.is_zero(a(i, k))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = f.add(c(i, j), f.mul(a(i, k), b(k, j)));
        }
    return c;
}

// Entries drawn uniformly from the field's sample set, row-major order.
template <class Field>
Matrix<Field> random_matrix(std::size_t rows, std::size_t cols, const Field& field, Rng& rng) {
    Matrix<Field> m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.random(rng);
    return m;
}

namespace detail {

// Row echelon rank with first-nonzero pivoting; destroys the copy.
template <class Field>
std::size_t elimination_rank(Matrix<Field> a) {
    const Field& f = a.field();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && f.is_zero(a(pivot, col))) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != rank)
            for (std::size_t c = col; c < a.cols(); ++c) std::swap(a(pivot, c), a(rank, c));
        const auto pivot_inv = f.inv(a(rank, col));
        for (std::size_t r = rank + 1; r < a.rows(); ++r) {
            if (f.is_zero(a(r, col))) continue;
            const auto factor = f.mul(a(r, col), pivot_inv);
            a(r, col) = f.zero();
            for (std::size_t c = col + 1; c < a.cols(); ++c)
                a(r, c) = f.sub(a(r, c), f.mul(factor, a(rank, c)));
        }
        ++rank;
    }
    return rank;
}

// Fraction-free (Bareiss) rank of an integer matrix; intermediate entries are
// minors of the input, so division below is exact.
inline std::size_t bareiss_rank(std::vector<std::vector<BigInt>> w) {
    const std::size_t rows = w.size();
    const std::size_t cols = rows == 0 ? 0 : w[0].size();
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && w[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank) std::swap(w[pivot], w[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c)
                w[r][c] = (w[rank][col] * w[r][c] - w[r][col] * w[rank][c]) / prev;
            w[r][col] = 0;
        }
        prev = w[rank][col];
        ++rank;
    }
    return rank;
}

// Clears denominators row by row; row scaling preserves rank.
inline std::vector<std::vector<BigInt>> to_integer_rows(const Matrix<RationalField>& a) {
    std::vector<std::vector<BigInt>> w(a.rows(), std::vector<BigInt>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        BigInt scale = 1;
        for (std::size_t c = 0; c < a.cols(); ++c) scale = lcm(scale, denominator(a(r, c)));
        for (std::size_t c = 0; c < a.cols(); ++c)
            w[r][c] = numerator(a(r, c)) * (scale / denominator(a(r, c)));
    }
    return w;
}

}  // namespace detail

template <class Field>
std::size_t matrix_rank(const Matrix<Field>& a) {
    if constexpr (std::is_same_v<Field, RationalField>) {
        return detail::bareiss_rank(detail::to_integer_rows(a));
    } else {
        return detail::elimination_rank(a);
    }
}

// Right-kernel basis in reduced echelon parametrization: one column per free
// column of rref(a), carrying 1 at its own position. Returns a cols x nullity
// matrix; deterministic for a given input.
template <class Field>
Matrix<Field> nullspace(Matrix<Field> a) {
    const Field& f = a.field();
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && f.is_zero(a(pivot, col))) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != rank)
            for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(rank, c));
        const auto pivot_inv = f.inv(a(rank, col));
        for (std::size_t c = 0; c < a.cols(); ++c) a(rank, c) = f.mul(a(rank, c), pivot_inv);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == rank || f.is_zero(a(r, col))) continue;
            const auto factor = a(r, col);
            for (std::size_t c = 0; c < a.cols(); ++c)
                a(r, c) = f.sub(a(r, c), f.mul(factor, a(rank, c)));
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    Matrix<Field> basis(f, a.cols(), a.cols() - rank);
    std::size_t out = 0;
    for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        basis(free_col, out) = f.one();
        for (std::size_t r = 0; r < rank; ++r)
            basis(pivot_cols[r], out) = f.neg(a(r, free_col));
        ++out;
    }
    return basis;
}

// Text export: header "rows cols modulus" (modulus 0 for rationals), then one
// row per line, entries space-separated, rationals as a/b.
template <class Field>
void write_matrix(std::ostream& os, const Matrix<Field>& a) {
    os << a.rows() << ' ' << a.cols() << ' ' << a.field().modulus() << '\n';
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (c) os << ' ';
            os << a.field().to_string(a(r, c));
        }
        os << '\n';
    }
}

}  // namespace sparsity
