#include "ranklab/states.hpp"

#include "ranklab/error.hpp"
#include "ranklab/rng.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace ranklab {

namespace {

constexpr std::size_t kDenseEntryLimit = std::size_t{1} << 24;

void check_subset(const PureState& psi, PartySet rows) {
    const std::size_t n = psi.party_count();
    if (!rows.is_subset_of(PartySet::all(n)))
        throw ContractError("subset " + label(rows) + " names a party outside the " + std::to_string(n) +
                            "-party state");
    if (rows.empty() || rows == PartySet::all(n))
        throw ContractError("matricization needs a nonempty proper subset of parties");
}

// Row-major flat index of the parties in `s`, and the product of their dimensions.
std::uint64_t flat_index(const MultiIndex& index, const std::vector<std::size_t>& dims, PartySet s) {
    std::uint64_t flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (s.contains(k))
            flat = flat * dims[k] + index[k];
    return flat;
}

std::uint64_t block_dim(const std::vector<std::size_t>& dims, PartySet s) {
    std::uint64_t prod = 1;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (s.contains(k)) {
            if (__builtin_mul_overflow(prod, static_cast<std::uint64_t>(dims[k]), &prod))
                throw UnsupportedError("joint dimension of " + label(s) + " exceeds 64 bits");
        }
    return static_cast<std::uint64_t>(prod);
}

template <class F>
void for_each_index(const std::vector<std::size_t>& dims, F&& f) {
    MultiIndex idx(dims.size(), 0);
    while (true) {
        f(idx);
        std::size_t k = dims.size();
        while (k > 0) {
            --k;
            if (++idx[k] < dims[k])
                break;
            idx[k] = 0;
            if (k == 0)
                return;
        }
        if (dims.empty())
            return;
    }
}

void check_same_party_count(const PureState& a, const PureState& b, const char* op) {
    if (a.party_count() != b.party_count())
        throw ContractError(std::string(op) + ": party counts differ (" + std::to_string(a.party_count()) + " vs " +
                            std::to_string(b.party_count()) + ")");
}

} // namespace

PartyGrouping::PartyGrouping(std::size_t n, std::vector<std::vector<std::size_t>> groups)
    : n_(n), groups_(std::move(groups)) {
    std::vector<bool> seen(n, false);
    for (const auto& g : groups_) {
        if (g.empty())
            throw ContractError("party grouping has an empty block");
        for (auto p : g) {
            if (p >= n || seen[p])
                throw ContractError("party grouping is not a partition of " + std::to_string(n) + " parties");
            seen[p] = true;
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw ContractError("party grouping does not cover every party");
}

PartyGrouping PartyGrouping::identity(std::size_t n) {
    std::vector<std::vector<std::size_t>> g(n);
    for (std::size_t k = 0; k < n; ++k)
        g[k] = {k};
    return {n, std::move(g)};
}

ExactMatrix matricize(const PureState& psi, PartySet rows) {
    check_subset(psi, rows);
    const auto& dims = psi.party_dims();
    const PartySet cols = rows.complement(psi.party_count());
    const std::uint64_t nr = block_dim(dims, rows);
    const std::uint64_t nc = block_dim(dims, cols);
    if (nr > kDenseEntryLimit || nc > kDenseEntryLimit || nr * nc > kDenseEntryLimit)
        throw UnsupportedError("dense matricization " + std::to_string(nr) + "x" + std::to_string(nc) +
                               " is too large; use matricize_support");
    ExactMatrix m(nr, nc);
    for (const auto& [index, value] : psi.amplitudes())
        m(flat_index(index, dims, rows), flat_index(index, dims, cols)) = value;
    return m;
}

ExactMatrix matricize_support(const PureState& psi, PartySet rows) {
    check_subset(psi, rows);
    const auto& dims = psi.party_dims();
    const PartySet cols = rows.complement(psi.party_count());
    block_dim(dims, rows);
    block_dim(dims, cols);
    std::map<std::uint64_t, std::size_t> row_keys;
    std::map<std::uint64_t, std::size_t> col_keys;
    for (const auto& [index, value] : psi.amplitudes()) {
        row_keys.emplace(flat_index(index, dims, rows), 0);
        col_keys.emplace(flat_index(index, dims, cols), 0);
    }
    std::size_t i = 0;
    for (auto& kv : row_keys)
        kv.second = i++;
    i = 0;
    for (auto& kv : col_keys)
        kv.second = i++;
    ExactMatrix m(row_keys.size(), col_keys.size());
    for (const auto& [index, value] : psi.amplitudes())
        m(row_keys[flat_index(index, dims, rows)], col_keys[flat_index(index, dims, cols)]) = value;
    return m;
}

std::size_t schmidt_rank(const PureState& psi, PartySet rows) { return rank_exact(matricize_support(psi, rows)); }

PureState tensor_product(const PureState& psi, const PureState& phi) {
    check_same_party_count(psi, phi, "tensor product");
    const std::size_t n = psi.party_count();
    std::vector<std::size_t> dims(n);
    for (std::size_t k = 0; k < n; ++k)
        dims[k] = psi.dim(k) * phi.dim(k);
    AmplitudeMap amps;
    MultiIndex idx(n);
    for (const auto& [i, a] : psi.amplitudes())
        for (const auto& [j, b] : phi.amplitudes()) {
            for (std::size_t k = 0; k < n; ++k)
                idx[k] = i[k] * phi.dim(k) + j[k];
            accumulate(amps, idx, a * b);
        }
    return {std::move(dims), std::move(amps)};
}

PureState orthogonal_sum(const PureState& psi, const PureState& phi) {
    check_same_party_count(psi, phi, "orthogonal sum");
    const std::size_t n = psi.party_count();
    std::vector<std::size_t> dims(n);
    for (std::size_t k = 0; k < n; ++k)
        dims[k] = psi.dim(k) + phi.dim(k);
    AmplitudeMap amps = psi.amplitudes();
    MultiIndex idx(n);
    for (const auto& [j, b] : phi.amplitudes()) {
        for (std::size_t k = 0; k < n; ++k)
            idx[k] = psi.dim(k) + j[k];
        accumulate(amps, idx, b);
    }
    return {std::move(dims), std::move(amps)};
}

PureState merge_parties(const PureState& psi, const PartyGrouping& grouping) {
    if (grouping.source_parties() != psi.party_count())
        throw ContractError("grouping is for " + std::to_string(grouping.source_parties()) + " parties, state has " +
                            std::to_string(psi.party_count()));
    const auto& groups = grouping.groups();
    if (groups.size() < 2)
        throw ContractError("merging into a single party leaves no bipartition");
    std::vector<std::size_t> dims(groups.size(), 1);
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (auto p : groups[g])
            dims[g] *= psi.dim(p);
    AmplitudeMap amps;
    MultiIndex idx(groups.size());
    for (const auto& [i, a] : psi.amplitudes()) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            std::size_t flat = 0;
            for (auto p : groups[g])
                flat = flat * psi.dim(p) + i[p];
            idx[g] = flat;
        }
        amps.emplace(idx, a);
    }
    return {std::move(dims), std::move(amps)};
}

PureState permute_parties(const PureState& psi, std::span<const std::size_t> perm) {
    const std::size_t n = psi.party_count();
    std::vector<bool> seen(n, false);
    if (perm.size() != n)
        throw ContractError("permutation has wrong length");
    for (auto p : perm) {
        if (p >= n || seen[p])
            throw ContractError("not a permutation of the parties");
        seen[p] = true;
    }
    std::vector<std::size_t> dims(n);
    for (std::size_t k = 0; k < n; ++k)
        dims[perm[k]] = psi.dim(k);
    AmplitudeMap amps;
    MultiIndex idx(n);
    for (const auto& [i, a] : psi.amplitudes()) {
        for (std::size_t k = 0; k < n; ++k)
            idx[perm[k]] = i[k];
        amps.emplace(idx, a);
    }
    return {std::move(dims), std::move(amps)};
}

PureState apply_local(const PureState& psi, std::size_t party, const ExactMatrix& op) {
    if (party >= psi.party_count())
        throw ContractError("apply_local: no party " + std::to_string(party));
    if (op.cols() != psi.dim(party))
        throw ShapeError("apply_local: operator has " + std::to_string(op.cols()) + " columns, party dimension is " +
                         std::to_string(psi.dim(party)));
    std::vector<std::size_t> dims = psi.party_dims();
    dims[party] = op.rows();
    AmplitudeMap amps;
    for (const auto& [i, a] : psi.amplitudes()) {
        MultiIndex idx = i;
        for (std::size_t out = 0; out < op.rows(); ++out) {
            const auto& w = op(out, i[party]);
            if (w.is_zero())
                continue;
            idx[party] = out;
            accumulate(amps, idx, w * a);
        }
    }
    return {std::move(dims), std::move(amps)};
}

PureState phi_plus(std::size_t d) {
    if (d == 0)
        throw ContractError("phi_plus needs d >= 1");
    AmplitudeMap amps;
    for (std::size_t i = 0; i < d; ++i)
        amps.emplace(MultiIndex{i, i}, 1);
    return {{d, d}, std::move(amps)};
}

PureState bell_pairs(std::size_t n, std::size_t d, std::span<const std::pair<std::size_t, std::size_t>> pairs) {
    PureState acc(std::vector<std::size_t>(n, 1), AmplitudeMap{{MultiIndex(n, 0), 1}});
    for (const auto& [x, y] : pairs) {
        if (x >= n || y >= n || x == y)
            throw ContractError("bell pair on invalid parties");
        std::vector<std::size_t> dims(n, 1);
        dims[x] = d;
        dims[y] = d;
        AmplitudeMap amps;
        for (std::size_t i = 0; i < d; ++i) {
            MultiIndex idx(n, 0);
            idx[x] = i;
            idx[y] = i;
            amps.emplace(idx, 1);
        }
        acc = tensor_product(acc, PureState(std::move(dims), std::move(amps)));
    }
    return acc;
}

std::vector<std::string> named_state_names() {
    return {"phi_plus", "ssa_cx", "psi1", "psi2", "psi3", "psi4", "psi5", "psi6", "product"};
}

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

PureState orthogonal_sum_of(std::size_t n, std::size_t d, const std::vector<Pairs>& terms) {
    PureState acc = bell_pairs(n, d, terms.front());
    for (std::size_t t = 1; t < terms.size(); ++t)
        acc = orthogonal_sum(acc, bell_pairs(n, d, terms[t]));
    return acc;
}

PureState ssa_counterexample() {
    // Purification of rho_ABC = (|000><000| + |100><100| + |101><101|
    // + |110><110| + |111><111|) / 5 with unit weights on D.
    const std::array<std::array<std::size_t, 3>, 5> support{{{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}}};
    AmplitudeMap amps;
    for (std::size_t k = 0; k < support.size(); ++k)
        amps.emplace(MultiIndex{support[k][0], support[k][1], support[k][2], k}, 1);
    return {{2, 2, 2, 5}, std::move(amps)};
}

PureState psi2() {
    AmplitudeMap amps;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            amps.emplace(MultiIndex{i, j, (i + j) % 3, (i + 2 * j) % 3}, 1);
    return {{3, 3, 3, 3}, std::move(amps)};
}

} // namespace

PureState named_state(std::string_view name, std::size_t d) {
    if (d == 0)
        throw ContractError("named states need d >= 1");
    if (name == "phi_plus")
        return phi_plus(d);
    if (name == "ssa_cx")
        return ssa_counterexample();
    if (name == "psi1")
        return PureState({2, 2, 1, 1}, AmplitudeMap{{{0, 0, 0, 0}, 1}, {{1, 1, 0, 0}, 1}});
    if (name == "psi2")
        return psi2();
    if (name == "psi3")
        return orthogonal_sum_of(4, d, {{{0, 1}}, {{2, 3}}});
    if (name == "psi4") {
        // A1 A2 B1 B2 C D
        auto raw = orthogonal_sum_of(6, d, {{{0, 4}, {1, 5}}, {{2, 4}, {3, 5}}});
        return merge_parties(raw, PartyGrouping(6, {{0, 1}, {2, 3}, {4}, {5}}));
    }
    if (name == "psi5") {
        // A1 A2 B1 B2 C1 C2 D
        auto raw = orthogonal_sum_of(7, d, {{{0, 4}, {1, 6}}, {{2, 4}, {3, 6}}, {{0, 4}, {2, 5}}});
        return merge_parties(raw, PartyGrouping(7, {{0, 1}, {2, 3}, {4, 5}, {6}}));
    }
    if (name == "psi6") {
        // A1 A2 A3 B1 B2 B3 C1 C2 C3 D; an unsubscripted party in a term
        // uses its first sub-party.
        auto raw = orthogonal_sum_of(
            10, d, {{{0, 3}, {1, 6}, {2, 9}}, {{0, 3}, {4, 6}, {5, 9}}, {{0, 6}, {3, 7}, {8, 9}}});
        return merge_parties(raw, PartyGrouping(10, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9}}));
    }
    if (name == "product")
        return {std::vector<std::size_t>(d, 1), AmplitudeMap{{MultiIndex(d, 0), 1}}};
    throw ContractError("unknown named state '" + std::string(name) + "'");
}

PureState tripartite_with_ranks(std::size_t a, std::size_t b, std::size_t c) {
    if (a == 0 || b == 0 || c == 0 || a > b * c || b > a * c || c > a * b)
        throw ContractError("(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                            ") is outside Omega_3");
    const auto verified = [&](const PureState& s) {
        return schmidt_rank(s, PartySet::of({0})) == a && schmidt_rank(s, PartySet::of({1})) == b &&
               schmidt_rank(s, PartySet::of({2})) == c;
    };

    if (c >= std::max(a, b)) {
        // Cells (k mod a, k mod b) cover every row and column; further cells
        // are taken in row-major order. Each cell gets its own C level.
        std::vector<std::vector<bool>> taken(a, std::vector<bool>(b, false));
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t k = 0; k < std::max(a, b); ++k) {
            cells.emplace_back(k % a, k % b);
            taken[k % a][k % b] = true;
        }
        for (std::size_t i = 0; i < a && cells.size() < c; ++i)
            for (std::size_t j = 0; j < b && cells.size() < c; ++j)
                if (!taken[i][j]) {
                    taken[i][j] = true;
                    cells.emplace_back(i, j);
                }
        AmplitudeMap amps;
        for (std::size_t k = 0; k < cells.size(); ++k)
            amps.emplace(MultiIndex{cells[k].first, cells[k].second, k}, 1);
        PureState s({a, b, c}, std::move(amps));
        if (!verified(s))
            throw InternalError("classical-type construction failed rank verification");
        return s;
    }

    constexpr int kAttempts = 64;
    const std::uint64_t base = (a * 1000003ULL + b) * 1000003ULL + c;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        Rng rng(mix_seed(base, static_cast<std::uint64_t>(attempt)));
        AmplitudeMap amps;
        for (std::size_t k = 0; k < c; ++k)
            for (std::size_t i = 0; i < a; ++i)
                for (std::size_t j = 0; j < b; ++j)
                    accumulate(amps, MultiIndex{i, j, k}, GaussianRational(rng.uniform(-3, 3)));
        if (amps.empty())
            continue;
        PureState s({a, b, c}, std::move(amps));
        if (verified(s))
            return s;
    }
    throw InternalError("no verified state with ranks (" + std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(c) + ") after " + std::to_string(kAttempts) + " attempts");
}

PureState state_from_operator_pairs(std::span<const ExactMatrix> r, std::span<const ExactMatrix> s) {
    if (r.empty() || r.size() != s.size())
        throw ShapeError("operator pairs need equal, nonzero list lengths");
    for (const auto& m : r)
        if (m.rows() != r.front().rows() || m.cols() != r.front().cols() || m.empty())
            throw ShapeError("all R_k must share one nonempty shape");
    for (const auto& m : s)
        if (m.rows() != s.front().rows() || m.cols() != s.front().cols() || m.empty())
            throw ShapeError("all S_k must share one nonempty shape");
    const std::size_t da = r.front().cols();
    const std::size_t db = r.front().rows();
    const std::size_t dc = s.front().cols();
    const std::size_t dd = s.front().rows();
    AmplitudeMap amps;
    for (std::size_t k = 0; k < r.size(); ++k)
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t bi = 0; bi < db; ++bi) {
                const auto& x = r[k](bi, i);
                if (x.is_zero())
                    continue;
                for (std::size_t j = 0; j < dc; ++j)
                    for (std::size_t di = 0; di < dd; ++di) {
                        const auto& y = s[k](di, j);
                        if (!y.is_zero())
                            accumulate(amps, MultiIndex{i, bi, j, di}, x * y);
                    }
            }
    if (amps.empty())
        throw ContractError("operator pairs sum to the zero state");
    return {{da, db, dc, dd}, std::move(amps)};
}

OperatorPairs operator_pair_decomposition(const PureState& psi) {
    if (psi.party_count() != 4)
        throw ContractError("operator pair decomposition needs a four-party state");
    const std::size_t da = psi.dim(0), db = psi.dim(1), dc = psi.dim(2), dd = psi.dim(3);
    const ExactMatrix m = matricize(psi, PartySet::of({0, 1}));
    const std::size_t width = m.cols();

    auto inner = [&](const std::vector<GaussianRational>& x, const std::vector<GaussianRational>& y) {
        GaussianRational s;
        for (std::size_t i = 0; i < width; ++i)
            if (!x[i].is_zero() && !y[i].is_zero())
                s += x[i].conj() * y[i];
        return s;
    };

    // Exact Gram-Schmidt (without normalization) on the rows of M.
    std::vector<std::vector<GaussianRational>> basis;
    std::vector<GaussianRational> norms;
    for (std::size_t row = 0; row < m.rows(); ++row) {
        std::vector<GaussianRational> w(m.entries().begin() + row * width, m.entries().begin() + (row + 1) * width);
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const GaussianRational f = inner(basis[k], w) / norms[k];
            if (f.is_zero())
                continue;
            for (std::size_t i = 0; i < width; ++i)
                w[i] -= f * basis[k][i];
        }
        if (std::all_of(w.begin(), w.end(), [](const auto& z) { return z.is_zero(); }))
            continue;
        norms.push_back(inner(w, w));
        basis.push_back(std::move(w));
    }

    OperatorPairs out;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        ExactMatrix rk(db, da);
        for (std::size_t a = 0; a < da; ++a)
            for (std::size_t b = 0; b < db; ++b) {
                std::vector<GaussianRational> row(m.entries().begin() + (a * db + b) * width,
                                                  m.entries().begin() + (a * db + b + 1) * width);
                rk(b, a) = inner(basis[k], row) / norms[k];
            }
        ExactMatrix sk(dd, dc);
        for (std::size_t c = 0; c < dc; ++c)
            for (std::size_t d = 0; d < dd; ++d)
                sk(d, c) = basis[k][c * dd + d];
        out.r.push_back(std::move(rk));
        out.s.push_back(std::move(sk));
    }
    return out;
}

PureState random_state(std::span<const std::size_t> party_dims, std::int64_t amplitude_bound, std::uint64_t seed) {
    if (amplitude_bound < 1)
        throw ContractError("amplitude bound must be >= 1");
    std::vector<std::size_t> dims(party_dims.begin(), party_dims.end());
    if (dims.empty() || std::any_of(dims.begin(), dims.end(), [](auto d) { return d == 0; }))
        throw ContractError("random_state needs at least one party and dimensions >= 1");
    Rng rng(seed);
    AmplitudeMap amps;
    for_each_index(dims, [&](const MultiIndex& idx) {
        const auto v = rng.uniform(-amplitude_bound, amplitude_bound);
        if (v != 0)
            amps.emplace(idx, GaussianRational(v));
    });
    if (amps.empty())
        amps.emplace(MultiIndex(dims.size(), 0), 1);
    return {std::move(dims), std::move(amps)};
}

} // namespace ranklab
