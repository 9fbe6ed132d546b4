#pragma once

#include "ranklab/gaussian_rational.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ranklab {

/// Dense row-major matrix over the Gaussian rationals.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);
    ExactMatrix(std::size_t rows, std::size_t cols, std::vector<GaussianRational> entries);

    /// Builds a matrix from nested integer rows; all rows must have equal length.
    static ExactMatrix from_rows(std::initializer_list<std::initializer_list<GaussianRational>> rows);
    static ExactMatrix from_integers(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values);
    static ExactMatrix identity(std::size_t n);
    /// Matrix unit with a single 1 at (r, c).
    static ExactMatrix unit(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool is_zero() const;

    const GaussianRational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    GaussianRational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const std::vector<GaussianRational>& entries() const { return entries_; }

    ExactMatrix transpose() const;
    ExactMatrix adjoint() const;

    ExactMatrix& operator+=(const ExactMatrix& o);
    friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) { return a += b; }
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussianRational> entries_;
};

/// Rank over the complex field, computed by fraction-free (Bareiss) elimination
/// on a row-scaled Gaussian-integer copy. Empty matrices have rank 0.
std::size_t rank_exact(const ExactMatrix& m);

/// Kronecker product, A-index major: entry[(a,c),(b,d)] = A[a,b] * B[c,d]
/// at row a*rows(B)+c, column b*cols(B)+d.
ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);

/// Views `m` as a grid of block_rows x block_cols blocks and transposes every
/// block in place. Maps kron(R, S) to kron(R, transpose(S)) when the blocks
/// have the shape of S. Throws ShapeError unless both dimensions divide.
ExactMatrix block_partial_transpose(const ExactMatrix& m, std::size_t block_rows, std::size_t block_cols);

/// Hilbert-Schmidt inner product trace(a^dagger b).
GaussianRational hilbert_schmidt(const ExactMatrix& a, const ExactMatrix& b);

struct ColumnPrefix {
    std::size_t k = 0;
    /// Full column permutation: the k chosen columns first (in the order they
    /// were added), then the remaining columns in their original order.
    std::vector<std::size_t> column_order;
};

/// Constructive column-prefix selection for pairwise Hilbert-Schmidt
/// orthogonal nonzero matrices: returns K <= N and a column order such that the
/// matrices restricted to their first K reordered columns are linearly
/// independent. Columns are added greedily, taking the first column that
/// breaks the current dependency. K is not claimed to be minimal.
///
/// Throws ShapeError on mixed shapes and ContractError when a matrix is zero
/// or two matrices are not orthogonal.
ColumnPrefix independent_column_prefix(std::span<const ExactMatrix> matrices);

/// Stacks the matrices restricted to `columns` as rows of an
/// N x (|columns| * rows) matrix (column-major within each restricted matrix).
ExactMatrix restricted_stack(std::span<const ExactMatrix> matrices, std::span<const std::size_t> columns);

} // namespace ranklab
