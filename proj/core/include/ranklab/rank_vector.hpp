#pragma once

#include "ranklab/party_set.hpp"
#include "ranklab/pure_state.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ranklab {

/// The 2^(n-1) - 1 bipartitions of n parties, each represented by its smaller
/// side (the side containing party 0 on ties), sorted by size and then
/// lexicographically by party index. For n = 4: A, B, C, D, AB, AC, AD.
class BipartitionIndex {
public:
    /// Throws ContractError for n < 2 or n > 20.
    explicit BipartitionIndex(std::size_t n);

    std::size_t party_count() const { return n_; }
    std::size_t size() const { return subsets_.size(); }
    const std::vector<PartySet>& subsets() const { return subsets_; }
    PartySet operator[](std::size_t i) const { return subsets_[i]; }

    /// Canonical side of the bipartition I : I^c; nullopt for the empty or full set.
    std::optional<PartySet> canonical(PartySet s) const;
    /// Coordinate of the bipartition I : I^c; nullopt for the empty or full set.
    std::optional<std::size_t> position(PartySet s) const;

    std::vector<std::string> labels() const;

private:
    std::size_t n_;
    std::vector<PartySet> subsets_;
    std::vector<std::int32_t> position_by_bits_;
};

BipartitionIndex canonical_bipartitions(std::size_t n);

/// Schmidt ranks of an n-party state in canonical bipartition order.
struct RankVector {
    std::size_t n = 0;
    std::vector<std::uint64_t> ranks;

    /// Rank across I : I^c; 1 for the empty and the full set.
    std::uint64_t at(PartySet s) const;

    friend bool operator==(const RankVector&, const RankVector&) = default;

    /// "(2,2,1,1,1,2,2)"
    std::string to_string() const;
    /// Exact 0-entropy vector: "log2(r)" per entry, integers for powers of two.
    std::string entropy_string() const;
    /// Two lines: tab-separated subset labels, then the ranks.
    std::string to_tsv() const;
};

/// Throws ContractError for single-party states.
RankVector rank_vector(const PureState& psi);

/// Rank vector of the state whose party perm[k] is party k of the original.
/// Throws ContractError if perm is not a permutation of the n parties.
RankVector permute_parties(const RankVector& rv, std::span<const std::size_t> perm);

/// Exact base-2 logarithm rendered as text: "3" for 8, "log2(6)" otherwise.
std::string log2_string(std::uint64_t r);

/// Renyi entropy S_alpha (base 2) of the reduced state on `parties`.
/// alpha = 0 is log2 of the exact Schmidt rank; alpha = 1 is the von Neumann
/// entropy; other alpha > 0 use the eigenvalues of the normalized Gram matrix
/// in double precision. Floating results are for cross-checks only.
/// Throws ContractError for negative or non-finite alpha.
double renyi_entropy(const PureState& psi, PartySet parties, double alpha);

} // namespace ranklab
