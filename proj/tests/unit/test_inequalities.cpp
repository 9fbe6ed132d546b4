#include "ranklab/error.hpp"
#include "ranklab/inequality.hpp"
#include "ranklab/rank_vector.hpp"
#include "ranklab/states.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

using namespace ranklab;

namespace {

using Coeffs = std::vector<std::int64_t>;

// Independent enumeration: templates as letter strings, each party assigned
// to one letter or to none. Only the final coordinate lookup uses the library.
struct Tmpl {
    std::size_t letters;
    std::vector<std::pair<std::int64_t, std::string>> terms;
};

Tmpl tmpl(Family f) {
    switch (f) {
    case Family::nonneg: return {1, {{1, "A"}}};
    case Family::subadd: return {2, {{1, "A"}, {1, "B"}, {-1, "AB"}}};
    case Family::thm1: return {3, {{1, "AB"}, {1, "AC"}, {-1, "A"}}};
    case Family::thm2: return {3, {{1, "AB"}, {1, "AC"}, {1, "BC"}, {-2, "A"}}};
    case Family::hypothesis: return {3, {{1, "AB"}, {1, "AC"}, {-1, "BC"}}};
    }
    return {};
}

std::set<Coeffs> oracle_family(Family f, std::size_t n) {
    const Tmpl t = tmpl(f);
    const BipartitionIndex idx(n);
    const std::uint32_t full = (1U << n) - 1;
    std::set<Coeffs> out;
        std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k)
        total *= t.letters + 1;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> sets(t.letters, 0);
        std::size_t c = code;
        for (std::size_t k = 0; k < n; ++k, c /= t.letters + 1)
            if (c % (t.letters + 1))
                sets[c % (t.letters + 1) - 1] |= 1U << k;
        if (std::find(sets.begin(), sets.end(), 0U) != sets.end())
            continue;
        Coeffs v(idx.size(), 0);
        for (const auto& [coef, word] : t.terms) {
            std::uint32_t s = 0;
            for (char ch : word)
                s |= sets[ch - 'A'];
            if (s == 0 || s == full)
                continue;
            // pick the smaller side; on ties the side holding party 0
            std::uint32_t side = s;
            const std::uint32_t comp = full & ~s;
            const int a = std::popcount(s), b = std::popcount(comp);
            if (b < a || (a == b && (comp & 1U)))
                side = comp;
            const auto& subs = idx.subsets();
            const auto it = std::find(subs.begin(), subs.end(), PartySet(side));
            REQUIRE(it != subs.end());
            v[it - subs.begin()] += coef;
        }
        if (std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; }))
            out.insert(v);
    }
    return out;
}

std::set<Coeffs> coeff_set(const std::vector<RankInequality>& v) {
    std::set<Coeffs> out;
    for (const auto& i : v)
        out.insert(i.coeffs);
    return out;
}

} // namespace

TEST_CASE("family instance counts") {
    const std::vector<std::pair<std::size_t, std::vector<std::size_t>>> expected = {
        {3, {3, 6, 3, 3, 3}}, {4, {7, 25, 30, 22, 21}}, {5, {15, 90, 195, 115, 105}}};
    const Family fams[] = {Family::nonneg, Family::subadd, Family::thm1, Family::thm2, Family::hypothesis};
    for (const auto& [n, counts] : expected)
        for (std::size_t f = 0; f < 5; ++f) {
            CAPTURE(n);
            CAPTURE(to_string(fams[f]));
            const auto inst = instantiate_family(fams[f], n);
            CHECK(inst.size() == counts[f]);
            CHECK(coeff_set(inst) == oracle_family(fams[f], n));
            CHECK(coeff_set(inst).size() == inst.size());
        }
    CHECK(known_set(4).size() == 48);
    CHECK_THROWS_AS(known_set(3), UnsupportedError);
    CHECK_THROWS_AS(parse_family("thm3"), ContractError);
    CHECK(parse_family("thm2") == Family::thm2);
}

TEST_CASE("known set membership") {
    const auto known = coeff_set(known_set(4));
    std::set<Coeffs> all;
    for (auto f : {Family::nonneg, Family::subadd, Family::thm1, Family::thm2})
        for (const auto& c : oracle_family(f, 4))
            all.insert(c);
    CHECK(known == all);
    // subadditivity of A and B: r_AB <= r_A r_B
    CHECK(known.count({1, 1, 0, 0, -1, 0, 0}) == 1);
    CHECK(known.count(ssa_inequality().coeffs) == 0);
    CHECK(known.count(conjectured_inequality().coeffs) == 0);
    // hypothesis instances are not implied by membership in the known list
    std::size_t outside = 0;
    for (const auto& h : instantiate_family(Family::hypothesis, 4))
        outside += known.count(h.coeffs) == 0;
    CHECK(outside > 0);
    for (const auto& k : known_set(4))
        CHECK(k.provenance != Provenance::hypothesis);
}

TEST_CASE("certificates") {
    const RankVector cx = rank_vector(named_state("ssa_cx"));
    const Certificate c = holds(ssa_inequality(), cx);
    CHECK_FALSE(c.holds);
    CHECK(c.lhs == 9);
    CHECK(c.rhs == 10);
    const RankVector r5 = rank_vector(named_state("psi3", 5));
    const Certificate conj = holds(conjectured_inequality(), r5);
    CHECK(conj.lhs == 2 * 10 * 10);
    CHECK(conj.rhs == 6 * 6 * 6);
    CHECK_FALSE(conj.holds);
    CHECK(holds(conjectured_inequality(), rank_vector(named_state("psi3", 4))).holds);
    CHECK_THROWS_AS(holds(ssa_inequality(), rank_vector(phi_plus(2))), ContractError);
    CHECK(audit_state(named_state("ssa_cx"), known_set(4)).all_hold());
}

TEST_CASE("soundness on random states and agreement with the log form") {
    const auto known = known_set(4);
    auto hyp = instantiate_family(Family::hypothesis, 4);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const std::vector<std::size_t> dims{2 + seed % 2, 2, 2 + seed % 3 / 2, 2};
        const PureState psi = random_state(dims, 2, seed);
        const AuditReport rep = audit_state(psi, known);
        CHECK(rep.all_hold());
        CHECK(rep.violations() == 0);
        for (const auto& v : audit_state(psi, hyp).verdicts) {
            double s = 0;
            for (std::size_t i = 0; i < 7; ++i)
                s += double(v.inequality.coeffs[i]) * std::log2(double(rep.ranks.ranks[i]));
            CHECK((s >= -1e-9) == v.certificate.holds);
        }
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::vector<std::size_t> dims{2, 2, 2, 1, 2};
        const RankVector rv = rank_vector(random_state(dims, 2, seed));
        for (auto f : {Family::nonneg, Family::subadd, Family::thm1, Family::thm2})
            CHECK(audit_ranks(rv, instantiate_family(f, 5)).all_hold());
    }
}

TEST_CASE("permutation invariance of families") {
    std::vector<std::size_t> perm{0, 1, 2, 3};
    for (auto f : {Family::subadd, Family::thm1, Family::thm2, Family::hypothesis}) {
        const auto base = coeff_set(instantiate_family(f, 4));
        do {
            std::set<Coeffs> moved;
            for (const auto& i : instantiate_family(f, 4))
                moved.insert(permute_parties(i, perm).coeffs);
            CHECK(moved == base);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    // holds(sigma I, sigma r) == holds(I, r)
    const RankVector rv = rank_vector(named_state("psi5", 2));
    const std::size_t p[] = {3, 0, 2, 1};
    for (const auto& i : instantiate_family(Family::hypothesis, 4))
        CHECK(holds(i, rv).holds == holds(permute_parties(i, p), permute_parties(rv, p)).holds);
}

TEST_CASE("text forms") {
    const std::pair<std::int64_t, PartySet> t[] = {{1, PartySet::of({0, 1})}, {1, PartySet::of({0, 2})}, {-1, PartySet::of({0})}};
    const RankInequality i = make_inequality(4, t, "x", Provenance::custom);
    CHECK(i.coeffs == Coeffs{-1, 0, 0, 0, 1, 1, 0});
    CHECK(i.entropy_form() == "S0(AB) + S0(AC) >= S0(A)");
    CHECK(i.rank_form() == "r_A <= r_AB*r_AC");
    // complement folding and cancellation
    const std::pair<std::int64_t, PartySet> u[] = {{1, PartySet::of({1, 2, 3})}, {-1, PartySet::of({0})}};
    CHECK_THROWS_AS(make_inequality(4, u, "zero", Provenance::custom), ContractError);
}

TEST_CASE("inequality files") {
    std::stringstream buf;
    const auto known = known_set(4);
    write_inequalities(buf, known);
    const auto back = parse_inequalities(buf);
    REQUIRE(back.size() == known.size());
    for (std::size_t k = 0; k < known.size(); ++k) {
        CHECK(back[k].coeffs == known[k].coeffs);
        CHECK(back[k].name == known[k].name);
        CHECK(back[k].n == 4);
    }
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return parse_inequalities(in);
    };
    CHECK(parse("# c\n\nsub : 1 1 -1\n").at(0).n == 3);
    CHECK(parse("a:1").at(0).n == 2);
    CHECK_THROWS_AS(parse("1 1 -1\n"), ParseError);
    CHECK_THROWS_AS(parse("x : 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse("x : 1 z -1\n"), ParseError);
    CHECK_THROWS_AS(parse("x : 0 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse(" : 1 1 -1\n"), ParseError);

    const auto ssa = load_inequalities(std::filesystem::path(RANKLAB_TEST_DATA_DIR) / "ssa0.txt");
    REQUIRE(ssa.size() == 1);
    CHECK(ssa[0].coeffs == ssa_inequality().coeffs);
    CHECK_THROWS_AS(load_inequalities("/nonexistent/ineq.txt"), ParseError);
}

TEST_CASE("audit report serialization") {
    const AuditReport rep = audit_state(named_state("psi3", 5), std::vector{conjectured_inequality(), ssa_inequality()});
    CHECK(rep.violations() == 2);
    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j.is_object());
    std::istringstream tsv(rep.to_tsv());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(tsv, line))
        ++lines;
    CHECK(lines >= 3);
}
