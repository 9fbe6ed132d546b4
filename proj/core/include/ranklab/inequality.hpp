#pragma once

#include "ranklab/party_set.hpp"
#include "ranklab/pure_state.hpp"
#include "ranklab/rank_vector.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ranklab {

enum class Provenance { nonneg, subadd, thm1, thm2, hypothesis, conjectured, custom };

std::string_view to_string(Provenance p);

/// sum_I coeffs[I] * S0(I) >= 0 over the canonical bipartitions of n parties,
/// equivalently prod_{c>0} r_I^c >= prod_{c<0} r_I^{-c}.
struct RankInequality {
    std::size_t n = 0;
    std::vector<std::int64_t> coeffs;
    std::string name;
    Provenance provenance = Provenance::custom;

    /// Throws ContractError if the coefficient count does not match n or all
    /// coefficients vanish.
    void validate() const;

    /// Log form, e.g. "S0(AB) + S0(AC) >= S0(A)".
    std::string entropy_form() const;
    /// Rank form, e.g. "r_A <= r_AB*r_AC".
    std::string rank_form() const;

    friend bool operator==(const RankInequality&, const RankInequality&) = default;
};

/// Builds an inequality from (coefficient, subset) terms, reducing each subset
/// to its canonical bipartition and dropping the empty and full sets (S0 = 0).
/// Returns nullopt-like empty coeffs via ContractError if everything cancels.
RankInequality make_inequality(std::size_t n, std::span<const std::pair<std::int64_t, PartySet>> terms,
                               std::string name, Provenance provenance);

/// The five templates, written with letters A, B, C standing for pairwise
/// disjoint nonempty sets of parties.
enum class Family { nonneg, subadd, thm1, thm2, hypothesis };

/// Throws ContractError for an unknown family name.
Family parse_family(std::string_view name);
std::string_view to_string(Family f);

/// Every distinct instance of a template over assignments of pairwise
/// disjoint nonempty subsets of n parties to its letters. Instances whose
/// coefficients cancel entirely are dropped; duplicates keep their first
/// occurrence.
std::vector<RankInequality> instantiate_family(Family family, std::size_t n);

/// Union of the nonneg, subadd, thm1 and thm2 instances for n = 4, deduplicated.
/// Throws UnsupportedError for any other n.
std::vector<RankInequality> known_set(std::size_t n = 4);

/// r_A r_B r_C <= r_AB r_AC r_AD on four parties (refuted by the psi3..psi6 families).
RankInequality conjectured_inequality();
/// S0(A) + S0(ABC) <= S0(AB) + S0(AC) on four parties (false for S0).
RankInequality ssa_inequality();

/// Same inequality for the state whose party perm[k] is party k.
RankInequality permute_parties(const RankInequality& ineq, std::span<const std::size_t> perm);

struct Certificate {
    mpz_class lhs; ///< product of r_I^c over positive coefficients
    mpz_class rhs; ///< product of r_I^-c over negative coefficients
    bool holds = false;
};

/// Exact multiplicative evaluation. Throws ContractError on a party-count mismatch.
Certificate holds(const RankInequality& ineq, const RankVector& rv);

struct Verdict {
    RankInequality inequality;
    Certificate certificate;
};

struct AuditReport {
    RankVector ranks;
    std::vector<Verdict> verdicts;

    bool all_hold() const;
    std::size_t violations() const;
    std::string to_tsv() const;
    std::string to_json() const;
};

AuditReport audit_state(const PureState& psi, std::span<const RankInequality> inequalities);
AuditReport audit_ranks(const RankVector& rv, std::span<const RankInequality> inequalities);

/// One inequality per line: `name : c_1 ... c_m` in canonical bipartition
/// order; n is inferred from m = 2^(n-1) - 1. Blank lines and `#` comments are
/// ignored. Parsed inequalities have provenance custom.
std::vector<RankInequality> parse_inequalities(std::istream& in);
std::vector<RankInequality> load_inequalities(const std::filesystem::path& path);
void write_inequalities(std::ostream& out, std::span<const RankInequality> inequalities);

} // namespace ranklab
