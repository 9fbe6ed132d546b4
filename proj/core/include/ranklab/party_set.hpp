#pragma once

#include <bit>
#include <compare>
#include <initializer_list>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ranklab {

inline constexpr std::size_t kMaxParties = 32;

/// Subset of parties {0, ..., n-1} stored as a bit mask.
class PartySet {
public:
    constexpr PartySet() = default;
    constexpr explicit PartySet(std::uint32_t bits) : bits_(bits) {}
    static PartySet of(std::initializer_list<std::size_t> parties) {
        PartySet s;
        for (auto p : parties)
            s.bits_ |= 1U << p;
        return s;
    }
    static constexpr PartySet all(std::size_t n) {
        return PartySet(n >= 32 ? ~0U : ((1U << n) - 1U));
    }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool contains(std::size_t p) const { return (bits_ >> p) & 1U; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr PartySet complement(std::size_t n) const { return PartySet(~bits_ & all(n).bits_); }
    constexpr bool is_subset_of(PartySet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool disjoint(PartySet o) const { return (bits_ & o.bits_) == 0; }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::uint32_t b = bits_; b; b &= b - 1)
            out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        return out;
    }

    friend constexpr PartySet operator|(PartySet a, PartySet b) { return PartySet(a.bits_ | b.bits_); }
    friend constexpr PartySet operator&(PartySet a, PartySet b) { return PartySet(a.bits_ & b.bits_); }
    friend constexpr bool operator==(PartySet, PartySet) = default;
    friend constexpr auto operator<=>(PartySet, PartySet) = default;

private:
    std::uint32_t bits_ = 0;
};

/// Label for a single party: A, B, ... for the first 26, then P26, P27, ...
std::string party_label(std::size_t party);
/// Concatenated party labels, e.g. "AB"; "{}" for the empty set.
std::string label(PartySet s);

} // namespace ranklab
