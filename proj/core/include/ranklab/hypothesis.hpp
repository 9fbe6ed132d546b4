#pragma once

#include "ranklab/exact_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ranklab {

/// lhs = rank(sum_k R_k (x) S_k^T), rhs = K * rank(sum_k R_k (x) S_k).
/// The open conjecture under test claims lhs <= rhs.
struct HypothesisSides {
    std::size_t lhs = 0;
    std::size_t rhs = 0;
    bool holds() const { return lhs <= rhs; }
};

/// Throws ShapeError unless both lists are nonempty, of equal length and
/// each of uniform shape.
HypothesisSides hypothesis_sides(std::span<const ExactMatrix> r, std::span<const ExactMatrix> s);

struct MatrixShape {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t size() const { return rows * cols; }
    friend bool operator==(const MatrixShape&, const MatrixShape&) = default;
};

/// Parses "m1xn1,m2xn2". Throws ParseError on malformed text.
std::pair<MatrixShape, MatrixShape> parse_shapes(const std::string& text);

/// Nonnegative rational num/den kept in lowest terms.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    static Ratio of(std::uint64_t num, std::uint64_t den);
    friend bool operator<(const Ratio& a, const Ratio& b);
    friend bool operator==(const Ratio&, const Ratio&) = default;
    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
};

struct Counterexample {
    std::vector<std::vector<std::int64_t>> r; ///< row-major entries of R_1..R_K
    std::vector<std::vector<std::int64_t>> s; ///< row-major entries of S_1..S_K
    HypothesisSides exact;                    ///< both ranks recomputed over the Gaussian rationals
};

struct SearchOptions {
    std::uint64_t budget = std::uint64_t{1} << 30; ///< exhaustive: max instances before pruning
    std::uint64_t chunk_size = 4096;
    unsigned workers = 1;
    /// Enumerate only R-lists whose vectorizations form a reduced column
    /// echelon matrix; sound because both sides are invariant under
    /// GL(K) recombination of the pair lists.
    bool canonicalize = true;
    std::uint32_t prescreen_prime = 65521; ///< random search only
    std::optional<std::filesystem::path> checkpoint;
};

struct SearchReport {
    std::string mode; ///< "exhaustive" or "random"
    std::size_t k = 0;
    MatrixShape r_shape;
    MatrixShape s_shape;
    std::uint32_t field = 0;      ///< q (exhaustive) or prescreen prime (random)
    std::int64_t entry_bound = 0; ///< random only
    std::uint64_t seed = 0;       ///< random only
    std::uint64_t space_size = 0; ///< instances requested (exhaustive: before pruning)
    std::uint64_t examined = 0;
    std::uint64_t flagged = 0;   ///< prescreen lhs > rhs, sent to exact confirmation
    Ratio max_ratio;             ///< max lhs/rhs over examined instances with rhs > 0
    std::vector<Counterexample> counterexamples;
    std::uint64_t resumed_from_chunk = 0; ///< chunks skipped via checkpoint
    std::uint64_t prior_counterexamples = 0;
    double wall_seconds = 0;

    /// Deterministic text; wall time is appended only when requested.
    std::string to_text(bool with_timing = false) const;
    std::string to_json(bool with_timing = false) const;
};

/// Every K-tuple pair over F_q (q prime): both sides computed mod q, any
/// instance with lhs_q > rhs_q recomputed exactly on its integer lift.
/// Throws BudgetError if q^((|R|+|S|) K) exceeds options.budget and
/// ContractError for non-prime q or K = 0.
SearchReport exhaustive_search(std::size_t k, MatrixShape r_shape, MatrixShape s_shape, std::uint32_t q,
                               const SearchOptions& options = {});

/// Seeded integer matrices with entries in [-bound, bound]; prescreen mod
/// options.prescreen_prime, exact confirmation of flagged instances.
SearchReport random_search(std::size_t k, MatrixShape r_shape, MatrixShape s_shape, std::int64_t entry_bound,
                           std::uint64_t samples, std::uint64_t seed, const SearchOptions& options = {});

/// Ties a matrix-form instance to the four-party state built from it.
struct BridgeVerdict {
    std::size_t r_ab = 0;
    std::size_t r_ac = 0;
    std::size_t r_ad = 0;
    HypothesisSides sides;
    bool identities_hold = false;  ///< r_AC * K = rhs, r_AD = lhs, r_AB <= K
    bool state_form_holds = false; ///< r_AD <= r_AB * r_AC
};

BridgeVerdict bridge_check(std::span<const ExactMatrix> r, std::span<const ExactMatrix> s);

} // namespace ranklab
