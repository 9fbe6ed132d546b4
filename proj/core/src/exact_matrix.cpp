#include "ranklab/exact_matrix.hpp"

#include "ranklab/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace ranklab {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, std::vector<GaussianRational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols)
        throw ShapeError("entry count does not match " + std::to_string(rows) + "x" + std::to_string(cols));
}

ExactMatrix ExactMatrix::from_rows(std::initializer_list<std::initializer_list<GaussianRational>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<GaussianRational> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c)
            throw ShapeError("ragged rows in matrix literal");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return {r, c, std::move(entries)};
}

ExactMatrix ExactMatrix::from_integers(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values) {
    if (values.size() != rows * cols)
        throw ShapeError("entry count does not match matrix shape");
    std::vector<GaussianRational> entries(values.begin(), values.end());
    return {rows, cols, std::move(entries)};
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::unit(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c) {
    if (r >= rows || c >= cols)
        throw ShapeError("matrix unit index out of range");
    ExactMatrix m(rows, cols);
    m(r, c) = 1;
    return m;
}

bool ExactMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& z) { return z.is_zero(); });
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

ExactMatrix ExactMatrix::adjoint() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c).conj();
    return t;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ShapeError("matrix sum of different shapes");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        entries_[i] += o.entries_[i];
    return *this;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_)
        throw ShapeError("matrix product: inner dimensions differ");
    ExactMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& x = a(i, k);
            if (x.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero())
                    p(i, j) += x * b(k, j);
        }
    return p;
}

std::string ExactMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? ", " : "") << (*this)(r, c);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

struct GaussInt {
    mpz_class re;
    mpz_class im;
    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

// Fraction-free elimination kernels. Each update computes
//   a[i][j] = (pivot * a[i][j] - a[i][c] * a[r][j]) / prev
// where the division is exact.
struct RealKernel {
    using Scalar = mpz_class;
    static bool is_zero(const Scalar& x) { return sgn(x) == 0; }
    static Scalar one() { return 1; }
    static void update(Scalar& aij, const Scalar& pivot, const Scalar& aic, const Scalar& arj, const Scalar& prev,
                       Scalar& tmp) {
        mpz_mul(tmp.get_mpz_t(), pivot.get_mpz_t(), aij.get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), aic.get_mpz_t(), arj.get_mpz_t());
        mpz_divexact(aij.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
    }
};

struct ComplexKernel {
    using Scalar = GaussInt;
    static bool is_zero(const Scalar& x) { return x.is_zero(); }
    static Scalar one() { return {1, 0}; }
    static void update(Scalar& aij, const Scalar& p, const Scalar& aic, const Scalar& arj, const Scalar& prev,
                       Scalar& tmp) {
        // tmp = p*aij - aic*arj
        tmp.re = p.re * aij.re - p.im * aij.im - (aic.re * arj.re - aic.im * arj.im);
        tmp.im = p.re * aij.im + p.im * aij.re - (aic.re * arj.im + aic.im * arj.re);
        if (sgn(prev.im) == 0) {
            mpz_divexact(aij.re.get_mpz_t(), tmp.re.get_mpz_t(), prev.re.get_mpz_t());
            mpz_divexact(aij.im.get_mpz_t(), tmp.im.get_mpz_t(), prev.re.get_mpz_t());
            return;
        }
        // tmp / prev = tmp * conj(prev) / |prev|^2
        const mpz_class n = prev.re * prev.re + prev.im * prev.im;
        mpz_class re = tmp.re * prev.re + tmp.im * prev.im;
        mpz_class im = tmp.im * prev.re - tmp.re * prev.im;
        mpz_divexact(aij.re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
        mpz_divexact(aij.im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
    }
};

template <class Kernel>
std::size_t bareiss_rank(std::vector<std::vector<typename Kernel::Scalar>>& a, std::size_t cols) {
    using Scalar = typename Kernel::Scalar;
    const std::size_t rows = a.size();
    Scalar prev = Kernel::one();
    Scalar tmp;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && Kernel::is_zero(a[p][c]))
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        const Scalar& pivot = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                Kernel::update(a[i][j], pivot, a[i][c], a[r][j], prev, tmp);
            a[i][c] = Scalar{};
        }
        prev = pivot;
        ++r;
    }
    return r;
}

mpz_class row_denominator_lcm(const ExactMatrix& m, std::size_t r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const auto& z = m(r, c);
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.real().get_den_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), z.imag().get_den_mpz_t());
    }
    return l;
}

mpz_class scaled(const mpq_class& q, const mpz_class& l) {
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    out *= q.get_num();
    return out;
}

} // namespace

std::size_t rank_exact(const ExactMatrix& m) {
    if (m.empty())
        return 0;
    bool real = true;
    std::vector<std::size_t> live_rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        bool nonzero = false;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto& z = m(r, c);
            nonzero = nonzero || !z.is_zero();
            real = real && z.is_real();
        }
        if (nonzero)
            live_rows.push_back(r);
    }
    if (live_rows.empty())
        return 0;

    if (real) {
        std::vector<std::vector<mpz_class>> a;
        a.reserve(live_rows.size());
        for (std::size_t r : live_rows) {
            const mpz_class l = row_denominator_lcm(m, r);
            auto& row = a.emplace_back(m.cols());
            for (std::size_t c = 0; c < m.cols(); ++c)
                row[c] = scaled(m(r, c).real(), l);
        }
        return bareiss_rank<RealKernel>(a, m.cols());
    }
    std::vector<std::vector<GaussInt>> a;
    a.reserve(live_rows.size());
    for (std::size_t r : live_rows) {
        const mpz_class l = row_denominator_lcm(m, r);
        auto& row = a.emplace_back(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c)
            row[c] = {scaled(m(r, c).real(), l), scaled(m(r, c).imag(), l)};
    }
    return bareiss_rank<ComplexKernel>(a, m.cols());
}

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
    const std::size_t m2 = b.rows();
    const std::size_t n2 = b.cols();
    ExactMatrix k(a.rows() * m2, a.cols() * n2);
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const auto& x = a(ar, ac);
            if (x.is_zero())
                continue;
            for (std::size_t br = 0; br < m2; ++br)
                for (std::size_t bc = 0; bc < n2; ++bc)
                    if (!b(br, bc).is_zero())
                        k(ar * m2 + br, ac * n2 + bc) = x * b(br, bc);
        }
    return k;
}

ExactMatrix block_partial_transpose(const ExactMatrix& m, std::size_t block_rows, std::size_t block_cols) {
    if (block_rows == 0 || block_cols == 0 || m.rows() % block_rows != 0 || m.cols() % block_cols != 0)
        throw ShapeError("block partial transpose: " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " is not a grid of " + std::to_string(block_rows) + "x" + std::to_string(block_cols) +
                         " blocks");
    const std::size_t grid_rows = m.rows() / block_rows;
    const std::size_t grid_cols = m.cols() / block_cols;
    ExactMatrix out(grid_rows * block_cols, grid_cols * block_rows);
    for (std::size_t gi = 0; gi < grid_rows; ++gi)
        for (std::size_t gj = 0; gj < grid_cols; ++gj)
            for (std::size_t x = 0; x < block_rows; ++x)
                for (std::size_t y = 0; y < block_cols; ++y)
                    out(gi * block_cols + y, gj * block_rows + x) = m(gi * block_rows + x, gj * block_cols + y);
    return out;
}

GaussianRational hilbert_schmidt(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError("Hilbert-Schmidt product of different shapes");
    GaussianRational s;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        if (!a.entries()[i].is_zero() && !b.entries()[i].is_zero())
            s += a.entries()[i].conj() * b.entries()[i];
    return s;
}

ExactMatrix restricted_stack(std::span<const ExactMatrix> matrices, std::span<const std::size_t> columns) {
    const std::size_t rows = matrices.empty() ? 0 : matrices.front().rows();
    ExactMatrix out(matrices.size(), columns.size() * rows);
    for (std::size_t k = 0; k < matrices.size(); ++k)
        for (std::size_t ci = 0; ci < columns.size(); ++ci)
            for (std::size_t r = 0; r < rows; ++r)
                out(k, ci * rows + r) = matrices[k](r, columns[ci]);
    return out;
}

ColumnPrefix independent_column_prefix(std::span<const ExactMatrix> matrices) {
    if (matrices.empty())
        throw ContractError("column prefix needs at least one matrix");
    const std::size_t rows = matrices.front().rows();
    const std::size_t cols = matrices.front().cols();
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        if (matrices[i].rows() != rows || matrices[i].cols() != cols)
            throw ShapeError("column prefix: matrices differ in shape");
        if (matrices[i].is_zero())
            throw ContractError("column prefix: matrix " + std::to_string(i) + " is zero");
        for (std::size_t j = 0; j < i; ++j)
            if (!hilbert_schmidt(matrices[j], matrices[i]).is_zero())
                throw ContractError("column prefix: matrices " + std::to_string(j) + " and " + std::to_string(i) +
                                    " are not Hilbert-Schmidt orthogonal");
    }

    std::vector<std::size_t> chosen;
    std::vector<bool> used(cols, false);
    for (std::size_t m = 1; m <= matrices.size(); ++m) {
        const auto head = matrices.first(m);
        if (rank_exact(restricted_stack(head, chosen)) == m)
            continue;
        // The first m-1 restrictions are independent, so the dependency is
        // unique up to scale; the first column where it fails restores
        // independence.
        bool extended = false;
        for (std::size_t c = 0; c < cols && !extended; ++c) {
            if (used[c])
                continue;
            chosen.push_back(c);
            if (rank_exact(restricted_stack(head, chosen)) == m) {
                used[c] = true;
                extended = true;
            } else {
                chosen.pop_back();
            }
        }
        if (!extended)
            throw InternalError("column prefix: no witnessing column for matrix " + std::to_string(m - 1));
    }

    if (rank_exact(restricted_stack(matrices, chosen)) != matrices.size())
        throw InternalError("column prefix: independence certificate failed");

    ColumnPrefix out;
    out.k = chosen.size();
    out.column_order = chosen;
    for (std::size_t c = 0; c < cols; ++c)
        if (!used[c])
            out.column_order.push_back(c);
    return out;
}

} // namespace ranklab
