// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: ranklab_acceptance [criterion numbers...]

#include "ranklab/classical.hpp"
#include "ranklab/cone.hpp"
#include "ranklab/error.hpp"
#include "ranklab/hypothesis.hpp"
#include "ranklab/inequality.hpp"
#include "ranklab/rank_vector.hpp"
#include "ranklab/rng.hpp"
#include "ranklab/states.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ranklab;

namespace {

// Pinned tolerances and limits.
constexpr double kVonNeumannTol = 1e-9;
constexpr std::size_t kPropertyStates = 10000;
constexpr std::size_t kVonNeumannStates = 500;
constexpr std::size_t kSupports = 100;
constexpr std::uint64_t kRandomHuntSamples = 100000;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::vector<std::uint64_t> u64(std::initializer_list<std::uint64_t> v) { return v; }

IntVector ints(std::initializer_list<long> v) {
    IntVector out;
    for (auto x : v)
        out.emplace_back(x);
    return out;
}

// 1
Outcome named_rank_vectors() {
    int checked = 0;
    for (std::uint64_t d = 1; d <= 3; ++d) {
        const std::uint64_t d2 = d * d, d3 = d2 * d;
        const std::vector<std::pair<std::string, std::vector<std::uint64_t>>> expected{
            {"psi1", u64({2, 2, 1, 1, 1, 2, 2})},
            {"psi2", u64({3, 3, 3, 3, 9, 9, 9})},
            {"psi3", u64({d + 1, d + 1, d + 1, d + 1, 2, 2 * d, 2 * d})},
            {"psi4", u64({d2 + 1, d2 + 1, 2 * d, 2 * d, 2 * d2, 2 * d, 2 * d})},
            {"psi5", u64({d2 + d + 1, d2 + d + 1, d2 + 2 * d, 2 * d + 1, 3 * d2, 3 * d, 3 * d})},
            {"psi6", u64({d3 + 2 * d, d3 + 2 * d, d3 + 2 * d, 3 * d, 3 * d2, 3 * d2, 3 * d2})},
        };
        for (const auto& [name, ranks] : expected) {
            if ((name == "psi1" || name == "psi2") && d > 1)
                continue;
            const RankVector rv = rank_vector(named_state(name, d));
            ++checked;
            if (rv.ranks != ranks)
                return fail(name + "(" + std::to_string(d) + ") gave " + rv.to_string());
        }
    }
    return {true, std::to_string(checked) + " vectors exact"};
}

// 2
Outcome ssa_counterexample() {
    const PureState psi = named_state("ssa_cx");
    const RankVector rv = rank_vector(psi);
    const auto A = PartySet::of({0}), D = PartySet::of({3});
    const auto AB = PartySet::of({0, 1}), AC = PartySet::of({0, 2});
    if (rv.at(A) != 2 || rv.at(D) != 5 || rv.at(AB) != 3 || rv.at(AC) != 3)
        return fail("ranks " + rv.to_string());
    const Certificate c = holds(ssa_inequality(), rv);
    if (c.holds || c.lhs != 9 || c.rhs != 10)
        return fail("certificate " + c.lhs.get_str() + " vs " + c.rhs.get_str());
    return {true, "r_A*r_ABC = 10 > 9 = r_AB*r_AC"};
}

const std::vector<IntVector>& reference_ray_table() {
    static const std::vector<IntVector> table{
        ints({1, 1, 0, 0, 0, 1, 1}), ints({1, 1, 1, 1, 2, 2, 2}), ints({1, 1, 1, 1, 1, 1, 0}),
        ints({2, 2, 1, 1, 2, 1, 1}), ints({2, 2, 2, 1, 2, 1, 1}), ints({3, 3, 3, 1, 2, 2, 2}),
        ints({2, 2, 2, 1, 3, 1, 1}), ints({1, 1, 1, 1, 2, 1, 0}),
    };
    return table;
}

HRep known_hrep() {
    std::vector<IntVector> rows;
    for (const auto& ineq : known_set(4)) {
        IntVector row;
        for (auto c : ineq.coeffs)
            row.emplace_back(static_cast<long>(c));
        rows.push_back(std::move(row));
    }
    return HRep(7, std::move(rows));
}

// 3
Outcome ray_table() {
    const VRep rays = extreme_rays(known_hrep());
    const auto families = orbit_families(rays, 4);
    std::set<IntVector> reps;
    for (const auto& f : families)
        reps.insert(f.representative);
    const auto& table = reference_ray_table();
    const std::set<IntVector> expected(table.begin(), table.end());
    if (families.size() != 8 || reps != expected) {
        std::string got;
        for (const auto& f : families)
            got += to_string(f.representative) + " ";
        return fail(std::to_string(families.size()) + " families: " + got);
    }
    return {true, std::to_string(rays.rays.size()) + " rays in 8 families"};
}

// 4
Outcome hypothesis_recovery() {
    std::set<IntVector> attained;
    for (std::size_t f = 0; f < 6; ++f)
        for (auto& x : orbit(reference_ray_table()[f], 4))
            attained.insert(primitive(x));
    const auto gap = facet_gap(known_hrep(), VRep(7, {attained.begin(), attained.end()}));

    const std::array<std::pair<std::int64_t, PartySet>, 3> terms{
        std::pair{std::int64_t{1}, PartySet::of({0, 1})}, std::pair{std::int64_t{1}, PartySet::of({0, 2})},
        std::pair{std::int64_t{-1}, PartySet::of({1, 2})}};
    const RankInequality hyp = make_inequality(4, terms, "hypothesis", Provenance::hypothesis);
    IntVector row;
    for (auto c : hyp.coeffs)
        row.emplace_back(static_cast<long>(c));
    std::set<IntVector> expected;
    for (auto& x : orbit(row, 4))
        expected.insert(primitive(x));

    const std::set<IntVector> got(gap.begin(), gap.end());
    if (got != expected || got.size() != gap.size()) {
        std::string text;
        for (const auto& g : gap)
            text += to_string(g) + " ";
        return fail("gap: " + text);
    }
    return {true, std::to_string(gap.size()) + " gap facets, all in the hypothesis orbit"};
}

std::vector<std::size_t> random_dims(Rng& rng) {
    std::vector<std::size_t> dims(4);
    for (auto& d : dims)
        d = static_cast<std::size_t>(rng.uniform(2, 3));
    return dims;
}

// 5
Outcome property_suite() {
    const auto known = known_set(4);
    Rng rng(mix_seed(5, 0));
    std::vector<RankVector> vectors;
    std::vector<PureState> states;
    for (std::size_t i = 0; i < kPropertyStates; ++i) {
        const PureState psi = random_state(random_dims(rng), 2, mix_seed(5, i + 1));
        const AuditReport report = audit_state(psi, known);
        if (!report.all_hold())
            return fail("state " + std::to_string(i) + " violates a known inequality, ranks " +
                        report.ranks.to_string());
        for (std::uint32_t mask = 1; mask < 15; ++mask)
            if (schmidt_rank(psi, PartySet(mask)) != schmidt_rank(psi, PartySet(mask).complement(4)))
                return fail("state " + std::to_string(i) + ": r_I != r_I^c for I = " + label(PartySet(mask)));
        vectors.push_back(report.ranks);
        states.push_back(psi);
    }
    std::size_t pairs = 0;
    for (std::size_t i = 0; i + 1 < kPropertyStates; i += 2, ++pairs) {
        const RankVector sum = rank_vector(orthogonal_sum(states[i], states[i + 1]));
        const RankVector product = rank_vector(tensor_product(states[i], states[i + 1]));
        for (std::size_t j = 0; j < 7; ++j) {
            if (sum.ranks[j] != vectors[i].ranks[j] + vectors[i + 1].ranks[j])
                return fail("direct-sum additivity fails on pair " + std::to_string(i));
            if (product.ranks[j] != vectors[i].ranks[j] * vectors[i + 1].ranks[j])
                return fail("tensor multiplicativity fails on pair " + std::to_string(i));
        }
    }
    return {true, std::to_string(kPropertyStates) + " states, " + std::to_string(pairs) + " sum/product pairs"};
}

// 6
Outcome k2_theorem() {
    const MatrixShape two{2, 2}, three{3, 3};
    const SearchReport ex = exhaustive_search(2, two, two, 2);
    if (!ex.counterexamples.empty())
        return fail("exhaustive F_2 search found a counterexample");
    const SearchReport rnd = random_search(2, three, three, 3, kRandomHuntSamples, 6);
    if (!rnd.counterexamples.empty())
        return fail("random search confirmed a counterexample");
    return {true, "exhaustive " + std::to_string(ex.examined) + " (max ratio " + ex.max_ratio.to_string() +
                      "), random " + std::to_string(rnd.examined) + " (max ratio " + rnd.max_ratio.to_string() +
                      ", flagged " + std::to_string(rnd.flagged) + ")"};
}

// 7: crossovers frozen from the first exact computation.
Outcome refuted_conjecture() {
    const std::vector<std::pair<std::string, std::size_t>> golden{{"psi3", 5}, {"psi4", 4}, {"psi5", 3}, {"psi6", 3}};
    const RankInequality conj = conjectured_inequality();
    std::string detail;
    for (const auto& [name, frozen] : golden) {
        std::size_t crossover = 0;
        for (std::size_t d = 1; d <= 8 && crossover == 0; ++d) {
            const AuditReport report = audit_state(named_state(name, d), std::span(&conj, 1));
            if (!report.verdicts.front().certificate.holds)
                crossover = d;
        }
        if (crossover != frozen)
            return fail(name + " crossover " + std::to_string(crossover) + ", golden " + std::to_string(frozen));
        detail += name + ":d=" + std::to_string(crossover) + " ";
    }
    return {true, detail + "VIOLATED"};
}

// 8
Outcome classical_bridge() {
    std::size_t verdicts = 0;
    for (std::size_t i = 0; i < kSupports; ++i) {
        const std::size_t n = 1 + i % 4;
        const SupportSet s = random_support(n, 4, mix_seed(8, i));
        for (const auto& row : purification_bridge(s))
            if (row.schmidt_rank != row.support_size)
                return fail("support " + std::to_string(i) + ": r != s at " + coordinate_label(row.coordinates));
        const ClassicalReport report = audit_classical(s);
        if (!report.all_hold())
            return fail("support " + std::to_string(i) + " violates a classical inequality");
        verdicts += report.verdicts.size();
    }
    return {true, std::to_string(kSupports) + " supports, " + std::to_string(verdicts) + " certificates"};
}

// 9
Outcome omega3() {
    std::size_t built = 0, refused = 0;
    for (std::size_t a = 1; a <= 6; ++a)
        for (std::size_t b = 1; b <= 6; ++b)
            for (std::size_t c = 1; c <= 6; ++c) {
                const bool realizable = a <= b * c && b <= a * c && c <= a * b;
                try {
                    const PureState psi = tripartite_with_ranks(a, b, c);
                    const RankVector rv = rank_vector(psi);
                    if (!realizable)
                        return fail("built a state for (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                    std::to_string(c) + ")");
                    if (rv.ranks != u64({a, b, c}))
                        return fail("wrong ranks " + rv.to_string());
                    ++built;
                } catch (const ContractError&) {
                    if (realizable)
                        return fail("refused (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                    std::to_string(c) + ")");
                    ++refused;
                }
            }
    return {true, std::to_string(built) + " built, " + std::to_string(refused) + " refused"};
}

// 10
Outcome von_neumann() {
    Rng rng(mix_seed(10, 0));
    double worst = -1e300;
    for (std::size_t i = 0; i < kVonNeumannStates; ++i) {
        const PureState psi = random_state(random_dims(rng), 2, mix_seed(10, i + 1));
        std::array<double, 16> s1{};
        for (std::uint32_t mask = 1; mask < 15; ++mask) {
            s1[mask] = renyi_entropy(psi, PartySet(mask), 1.0);
            const double s0 = std::log2(static_cast<double>(schmidt_rank(psi, PartySet(mask))));
            worst = std::max(worst, s1[mask] - s0);
            if (s1[mask] > s0 + kVonNeumannTol)
                return fail("S1 > S0 on state " + std::to_string(i));
        }
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b)
                for (std::size_t c = 0; c < 4; ++c) {
                    if (a == b || b == c || a == c)
                        continue;
                    const std::uint32_t A = 1u << a, B = 1u << b, C = 1u << c;
                    const double ssa = s1[A | B] + s1[B | C] - s1[B] - s1[A | B | C];
                    const double wm = s1[A | B] + s1[B | C] - s1[A] - s1[C];
                    worst = std::max({worst, -ssa, -wm});
                    if (ssa < -kVonNeumannTol || wm < -kVonNeumannTol)
                        return fail("SSA/WM fails on state " + std::to_string(i));
                }
    }
    std::ostringstream out;
    out << kVonNeumannStates << " states, worst slack " << worst;
    return {true, out.str()};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "named rank vectors", 10, named_rank_vectors},
        {2, "SSA counterexample for S0", 1, ssa_counterexample},
        {3, "ray table", 60, ray_table},
        {4, "hypothesis recovery", 60, hypothesis_recovery},
        {5, "theorem property suite", 600, property_suite},
        {6, "K<=2 theorem", 600, k2_theorem},
        {7, "refuted conjecture", 30, refuted_conjecture},
        {8, "classical bridge", 120, classical_bridge},
        {9, "Omega_3 realizability", 120, omega3},
        {10, "von Neumann cross-checks", 120, von_neumann},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.contains(c.id))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.pass && secs > c.limit_seconds) {
            o.pass = false;
            o.detail += " (over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit)";
        }
        failures += !o.pass;
        std::printf("%s  %2d  %-28s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
