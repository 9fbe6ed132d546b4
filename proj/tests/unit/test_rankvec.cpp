#include "oracles.hpp"

#include "ranklab/error.hpp"
#include "ranklab/rank_vector.hpp"
#include "ranklab/states.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace ranklab;

namespace {

using Ranks = std::vector<std::uint64_t>;

std::vector<std::string> labels(std::size_t n) { return canonical_bipartitions(n).labels(); }

} // namespace

TEST_CASE("canonical bipartition order") {
    CHECK(labels(2) == std::vector<std::string>{"A"});
    CHECK(labels(3) == std::vector<std::string>{"A", "B", "C"});
    CHECK(labels(4) == std::vector<std::string>{"A", "B", "C", "D", "AB", "AC", "AD"});
    const auto five = labels(5);
    CHECK(five.size() == 15);
    CHECK(five[4] == "E");
    CHECK(five[5] == "AB");
    CHECK(five.back() == "DE");
    CHECK_THROWS_AS(BipartitionIndex(1), ContractError);

    const BipartitionIndex idx(4);
    CHECK(idx.position(PartySet::of({1, 2, 3})) == 0u);
    CHECK(idx.position(PartySet::of({2, 3})) == 4u);
    CHECK(idx.canonical(PartySet::of({1, 3})) == PartySet::of({0, 2}));
    CHECK_FALSE(idx.position(PartySet{}).has_value());
    CHECK_FALSE(idx.position(PartySet::all(4)).has_value());
    // every proper nonempty subset lands on exactly one coordinate
    for (std::size_t n = 2; n <= 6; ++n) {
        const BipartitionIndex b(n);
        CHECK(b.size() == (std::size_t{1} << (n - 1)) - 1);
        std::vector<int> hits(b.size(), 0);
        for (std::uint32_t s = 1; s + 1 < (1U << n); ++s)
            ++hits[*b.position(PartySet(s))];
        CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 2; }));
    }
}

TEST_CASE("rank vectors of the named gallery") {
    CHECK(rank_vector(named_state("psi5", 2)).ranks == Ranks{7, 7, 8, 5, 12, 6, 6});
    CHECK(rank_vector(named_state("psi4", 3)).ranks == Ranks{10, 10, 6, 6, 18, 6, 6});
    CHECK(rank_vector(named_state("psi1")).to_string() == "(2,2,1,1,1,2,2)");
    CHECK(rank_vector(named_state("psi2")).entropy_string() == "(log2(3),log2(3),log2(3),log2(3),log2(9),log2(9),log2(9))");
    CHECK(log2_string(8) == "3");
    CHECK(log2_string(1) == "0");
    CHECK(log2_string(6) == "log2(6)");
    CHECK(rank_vector(phi_plus(3)).ranks == Ranks{3});
    CHECK_THROWS_AS(rank_vector(PureState({2}, {{{0}, 1}})), ContractError);
}

TEST_CASE("rank vector entries agree with the dense oracle") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::vector<std::size_t> dims{2, 3, 1, 2, 2};
        const PureState psi = random_state(dims, 1, seed);
        const RankVector rv = rank_vector(psi);
        const BipartitionIndex idx(5);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const auto m = oracle::matricize(psi, idx[i].members());
            CHECK(rv.ranks[i] == oracle::complex_rank(m));
        }
        CHECK(rv.at(PartySet{}) == 1);
        CHECK(rv.at(PartySet::all(5)) == 1);
        CHECK(rv.at(PartySet::of({0, 1, 2})) == rv.at(PartySet::of({3, 4})));
    }
}

TEST_CASE("permuting parties commutes with taking ranks") {
    std::vector<std::size_t> perm(4);
    std::iota(perm.begin(), perm.end(), 0);
    const std::vector<std::size_t> dims{2, 3, 2, 1};
    const PureState psi = random_state(dims, 2, 3);
    const RankVector base = rank_vector(psi);
    do {
        CHECK(rank_vector(permute_parties(psi, perm)) == permute_parties(base, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Swapping A and C in psi1.
    const std::size_t swap_ac[] = {2, 1, 0, 3};
    CHECK(permute_parties(rank_vector(named_state("psi1")), swap_ac).ranks == Ranks{1, 2, 2, 1, 2, 2, 1});
    const std::size_t bad[] = {0, 0, 1, 2};
    CHECK_THROWS_AS(permute_parties(base, bad), ContractError);
}

TEST_CASE("renyi entropies") {
    for (std::size_t d = 1; d <= 4; ++d)
        for (double alpha : {0.0, 0.5, 1.0, 2.0, 3.0})
            CHECK(renyi_entropy(phi_plus(d), PartySet::of({0}), alpha) == doctest::Approx(std::log2(double(d))).epsilon(1e-12));

    // amplitudes 1 and 2: probabilities 1/5 and 4/5
    const PureState psi({2, 2}, {{{0, 0}, 1}, {{1, 1}, 2}});
    const double h = -(0.2 * std::log2(0.2) + 0.8 * std::log2(0.8));
    CHECK(renyi_entropy(psi, PartySet::of({0}), 1.0) == doctest::Approx(h).epsilon(1e-12));
    CHECK(renyi_entropy(psi, PartySet::of({0}), 2.0) == doctest::Approx(-std::log2(0.04 + 0.64)).epsilon(1e-12));
    CHECK(renyi_entropy(psi, PartySet::of({0}), 0.0) == 1.0);
    CHECK(renyi_entropy(psi, PartySet{}, 1.0) == 0.0);
    CHECK_THROWS_AS(renyi_entropy(psi, PartySet::of({0}), -1.0), ContractError);
    CHECK_THROWS_AS(renyi_entropy(psi, PartySet::of({0}), NAN), ContractError);

    // S_alpha is non-increasing in alpha and bounded by S_0.
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::vector<std::size_t> dims{2, 3, 2};
        const PureState r = random_state(dims, 2, seed);
        double prev = renyi_entropy(r, PartySet::of({1}), 0.0);
        for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
            const double s = renyi_entropy(r, PartySet::of({1}), alpha);
            CHECK(s <= prev + 1e-9);
            prev = s;
        }
        CHECK(renyi_entropy(r, PartySet::of({1}), 1.0) ==
              doctest::Approx(renyi_entropy(r, PartySet::of({0, 2}), 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("tsv output") {
    CHECK(rank_vector(named_state("psi1")).to_tsv() == "A\tB\tC\tD\tAB\tAC\tAD\n2\t2\t1\t1\t1\t2\t2\n");
}
