#pragma once

// Deliberately naive reference implementations used as test oracles. They
// share no code with the library's elimination routines.

#include "ranklab/exact_matrix.hpp"
#include "ranklab/pure_state.hpp"
#include "ranklab/rng.hpp"

#include <gmpxx.h>

#include <vector>

namespace oracle {

using Table = std::vector<std::vector<mpq_class>>;

// Textbook Gauss-Jordan over Q.
inline std::size_t rank(Table a) {
    std::size_t r = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            const mpq_class f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

// Complex rank of X + iY equals half the real rank of [[X, -Y], [Y, X]].
inline std::size_t complex_rank(const ranklab::ExactMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    Table t(2 * r, std::vector<mpq_class>(2 * c));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const auto& z = m(i, j);
            t[i][j] = z.real();
            t[i][j + c] = -z.imag();
            t[i + r][j] = z.imag();
            t[i + r][j + c] = z.real();
        }
    return rank(t) / 2;
}

inline ranklab::ExactMatrix random_matrix(std::size_t rows, std::size_t cols, std::int64_t bound,
                                          std::uint64_t seed, bool complex = false) {
    ranklab::Rng rng(seed);
    std::vector<ranklab::GaussianRational> e;
    for (std::size_t i = 0; i < rows * cols; ++i) {
        const mpq_class re(static_cast<long>(rng.uniform(-bound, bound)));
        const mpq_class im(complex ? static_cast<long>(rng.uniform(-bound, bound)) : 0L);
        e.emplace_back(re, im);
    }
    return {rows, cols, std::move(e)};
}

// Low-rank integer matrix: product of rows x k and k x cols random factors.
inline ranklab::ExactMatrix random_low_rank(std::size_t rows, std::size_t cols, std::size_t k, std::uint64_t seed) {
    return random_matrix(rows, k, 2, seed) * random_matrix(k, cols, 2, seed + 1000);
}

// Dense matricization straight from the definition, rows = parties in `rows`.
inline ranklab::ExactMatrix matricize(const ranklab::PureState& psi, const std::vector<std::size_t>& rows) {
    const auto& dims = psi.party_dims();
    std::vector<bool> in_rows(dims.size(), false);
    for (auto r : rows)
        in_rows[r] = true;
    std::size_t nr = 1, nc = 1;
    for (std::size_t k = 0; k < dims.size(); ++k)
        (in_rows[k] ? nr : nc) *= dims[k];
    ranklab::ExactMatrix m(nr, nc);
    for (const auto& [idx, amp] : psi.amplitudes()) {
        std::size_t r = 0, c = 0;
        for (std::size_t k = 0; k < dims.size(); ++k)
            if (in_rows[k])
                r = r * dims[k] + idx[k];
            else
                c = c * dims[k] + idx[k];
        m(r, c) = amp;
    }
    return m;
}

} // namespace oracle
