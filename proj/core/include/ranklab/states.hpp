#pragma once

#include "ranklab/exact_matrix.hpp"
#include "ranklab/party_set.hpp"
#include "ranklab/pure_state.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ranklab {

/// Ordered partition of {0, ..., n-1} into nonempty blocks. Block k becomes
/// party k after merging; indices are flattened row-major in listed order.
class PartyGrouping {
public:
    /// Throws ContractError unless the blocks partition {0, ..., n-1}.
    PartyGrouping(std::size_t n, std::vector<std::vector<std::size_t>> groups);
    static PartyGrouping identity(std::size_t n);

    std::size_t source_parties() const { return n_; }
    const std::vector<std::vector<std::size_t>>& groups() const { return groups_; }

private:
    std::size_t n_;
    std::vector<std::vector<std::size_t>> groups_;
};

/// Coefficient matrix with rows indexed by the joint index of the parties in
/// `rows` (row-major in party order) and columns by the complement.
/// Throws ContractError if `rows` is empty, covers every party or names a
/// party that does not exist.
ExactMatrix matricize(const PureState& psi, PartySet rows);

/// The nonzero rows and columns of matricize(psi, rows) only; same rank,
/// size bounded by the number of terms.
ExactMatrix matricize_support(const PureState& psi, PartySet rows);

/// Schmidt rank across rows : complement.
std::size_t schmidt_rank(const PureState& psi, PartySet rows);

/// Party k of the result is party k of psi paired with party k of phi;
/// joint index i * dim_phi + j.
PureState tensor_product(const PureState& psi, const PureState& phi);

/// psi on indices [0, dim_psi) and phi shifted by dim_psi, on every party.
PureState orthogonal_sum(const PureState& psi, const PureState& phi);

/// Throws ContractError when the grouping leaves fewer than two parties.
PureState merge_parties(const PureState& psi, const PartyGrouping& grouping);

/// Relabels parties: party k of psi becomes party perm[k] of the result.
PureState permute_parties(const PureState& psi, std::span<const std::size_t> perm);

/// Applies `op` (dim_out x dim(party)) to one party.
PureState apply_local(const PureState& psi, std::size_t party, const ExactMatrix& op);

/// Product of unnormalized maximally entangled pairs sum_i |i>|i> of local
/// dimension d on each listed pair of parties; unlisted parties have dimension 1.
PureState bell_pairs(std::size_t n, std::size_t d, std::span<const std::pair<std::size_t, std::size_t>> pairs);

PureState phi_plus(std::size_t d);

/// Names accepted by named_state.
std::vector<std::string> named_state_names();

/// Gallery: "phi_plus" (d), "ssa_cx", "psi1", "psi2", "psi3".."psi6" (d),
/// "product" (n = d parties of dimension 1). Throws ContractError for unknown
/// names or d = 0.
PureState named_state(std::string_view name, std::size_t d = 1);

/// Tripartite state with Schmidt ranks exactly (a, b, c) across A, B, C.
/// Throws ContractError ("outside Omega_3") unless a, b, c >= 1, a <= bc,
/// b <= ac and c <= ab; throws InternalError if verification keeps failing.
PureState tripartite_with_ranks(std::size_t a, std::size_t b, std::size_t c);

/// sum_k sum_i sum_j |i>_A (R_k|i>)_B |j>_C (S_k|j>)_D with d_A = cols(R),
/// d_B = rows(R), d_C = cols(S), d_D = rows(S).
PureState state_from_operator_pairs(std::span<const ExactMatrix> r, std::span<const ExactMatrix> s);

struct OperatorPairs {
    std::vector<ExactMatrix> r;
    std::vector<ExactMatrix> s;
};

/// Exact Schmidt-type decomposition of a four-party state across AB:CD with
/// mutually orthogonal CD factors, written as operator pairs (R_k, S_k) such
/// that state_from_operator_pairs reproduces psi. The S_k are pairwise
/// Hilbert-Schmidt orthogonal and there are exactly r_AB of them.
OperatorPairs operator_pair_decomposition(const PureState& psi);

/// Deterministic dense state with integer amplitudes in [-bound, bound].
PureState random_state(std::span<const std::size_t> party_dims, std::int64_t amplitude_bound, std::uint64_t seed);

} // namespace ranklab

#include <iosfwd>
#include <filesystem>

namespace ranklab {

/// Text format: first line holds the party dimensions, then one amplitude per
/// line as `i1 ... in re im` where re and im are `p` or `p/q`. Blank lines and
/// `#` comments are ignored. Throws ParseError on out-of-range indices, zero
/// amplitudes or duplicate multi-indices.
PureState parse_state(std::istream& in);
PureState load_state(const std::filesystem::path& path);
void write_state(std::ostream& out, const PureState& psi);

} // namespace ranklab
