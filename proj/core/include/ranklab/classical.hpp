#pragma once

#include "ranklab/party_set.hpp"
#include "ranklab/pure_state.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ranklab {

/// Support of a joint distribution of n discrete variables. Coordinates are
/// 0-based internally and printed 1-based ("s_13" is coordinates {0, 2}).
class SupportSet {
public:
    /// Throws ContractError for an empty support, a zero alphabet, or a tuple
    /// of the wrong length or out of range.
    SupportSet(std::vector<std::size_t> alphabet_sizes, std::set<std::vector<std::size_t>> points);

    std::size_t n() const { return alphabets_.size(); }
    const std::vector<std::size_t>& alphabet_sizes() const { return alphabets_; }
    const std::set<std::vector<std::size_t>>& points() const { return points_; }

private:
    std::vector<std::size_t> alphabets_;
    std::set<std::vector<std::size_t>> points_;
};

/// "13" for coordinates {0, 2}.
std::string coordinate_label(PartySet s);

/// s_I for every nonempty I, keyed by coordinate mask.
std::map<PartySet, std::uint64_t> support_sizes(const SupportSet& s);

struct ClassicalVerdict {
    std::string kind;     ///< "monotone", "submult" or "shearer"
    std::string instance; ///< e.g. "s_1 <= s_12", "s_123^2 <= s_12*s_13*s_23"
    mpz_class lhs;
    mpz_class rhs;
    bool holds = false;
};

struct ClassicalReport {
    std::size_t n = 0;
    std::map<PartySet, std::uint64_t> sizes;
    std::vector<ClassicalVerdict> verdicts;

    bool all_hold() const;
    std::string to_tsv() const;
};

/// Monotonicity s_I <= s_J (I strictly inside J), submultiplicativity
/// s_{I u J} <= s_I s_J (disjoint I, J) and s_J^C(|J|-1, k-1) <= prod_{|I|=k, I in J} s_I.
ClassicalReport audit_classical(const SupportSet& s);

/// (n+1)-party state sum_x |x>_0 |x_1>_1 ... |x_n>_n with unit amplitudes,
/// party 0 indexing the support points in sorted order.
PureState purification(const SupportSet& s);

struct BridgeRow {
    PartySet coordinates;
    std::uint64_t support_size = 0;
    std::size_t schmidt_rank = 0;
};

/// Compares s_I with the Schmidt rank of I (shifted past the purifying party)
/// for every nonempty I.
std::vector<BridgeRow> purification_bridge(const SupportSet& s);

/// Each point is kept independently with probability 1/2 (at least one is
/// kept); alphabet sizes drawn from [1, max_alphabet].
SupportSet random_support(std::size_t n, std::size_t max_alphabet, std::uint64_t seed);

/// First line: alphabet sizes. Every further line: one tuple. '#' comments.
SupportSet parse_support(std::istream& in);
SupportSet load_support(const std::filesystem::path& path);

} // namespace ranklab
