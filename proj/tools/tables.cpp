#include "cli.hpp"

#include "ranklab/cone.hpp"
#include "ranklab/error.hpp"
#include "ranklab/inequality.hpp"
#include "ranklab/rank_vector.hpp"
#include "ranklab/states.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>

#ifndef RANKLAB_DEFAULT_DATA_DIR
#define RANKLAB_DEFAULT_DATA_DIR "data"
#endif

namespace ranklab::cli {

namespace {

const char* const kLabels4 = "A\tB\tC\tD\tAB\tAC\tAD";

HRep known_hrep() {
    std::vector<IntVector> rows;
    for (const auto& ineq : known_set(4)) {
        IntVector row;
        for (auto c : ineq.coeffs)
            row.emplace_back(static_cast<long>(c));
        rows.push_back(std::move(row));
    }
    return {7, std::move(rows)};
}

std::string tabbed(const IntVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "\t" : "") + v[i].get_str();
    return out;
}

// Exponent vector when every rank is a power of one base, e.g. (2,2,1,...) -> (1,1,0,...).
std::optional<IntVector> log_direction(const RankVector& rv) {
    std::uint64_t base = 0;
    for (auto r : rv.ranks)
        if (r > 1 && (base == 0 || r < base))
            base = r;
    if (base == 0)
        return std::nullopt;
    IntVector out;
    for (auto r : rv.ranks) {
        long e = 0;
        while (r > 1 && r % base == 0) {
            r /= base;
            ++e;
        }
        if (r != 1)
            return std::nullopt;
        out.emplace_back(e);
    }
    return out;
}

// Leading degree in d of every rank, from ranks at d = 1..5; the ranks must be
// polynomials of degree at most 3 (checked via vanishing fourth differences).
IntVector degree_direction(const std::string& name) {
    std::vector<RankVector> samples;
    for (std::size_t d = 1; d <= 5; ++d)
        samples.push_back(rank_vector(named_state(name, d)));
    IntVector out;
    for (std::size_t j = 0; j < samples.front().ranks.size(); ++j) {
        std::vector<mpz_class> diff;
        for (const auto& s : samples)
            diff.emplace_back(static_cast<unsigned long>(s.ranks[j]));
        long degree = -1;
        for (long order = 0; order <= 4; ++order) {
            if (std::any_of(diff.begin(), diff.end(), [](const mpz_class& x) { return x != 0; }))
                degree = order;
            for (std::size_t i = 0; i + 1 < diff.size(); ++i)
                diff[i] = diff[i + 1] - diff[i];
            diff.pop_back();
        }
        if (degree > 3)
            throw InternalError(name + " ranks are not cubic polynomials in d");
        out.emplace_back(degree);
    }
    return out;
}

std::string ray_table() {
    const auto families = orbit_families(extreme_rays(known_hrep()), 4);
    // Which construction reaches which family: psi1, psi2 on the ray itself,
    // psi3..psi6 in the limit d -> infinity.
    std::vector<std::string> attained(families.size());
    const std::vector<std::pair<std::string, bool>> witnesses{{"psi1", false}, {"psi2", false}, {"psi3", true},
                                                               {"psi4", true},  {"psi5", true},  {"psi6", true}};
    std::vector<std::size_t> order;
    for (const auto& [name, limit] : witnesses) {
        std::optional<IntVector> dir;
        if (limit)
            dir = degree_direction(name);
        else
            dir = log_direction(rank_vector(named_state(name)));
        if (!dir)
            throw InternalError(name + " has no exact log direction");
        const IntVector ray = primitive(*dir);
        for (std::size_t f = 0; f < families.size(); ++f) {
            const auto orb = orbit(families[f].representative, 4);
            if (std::find(orb.begin(), orb.end(), ray) == orb.end())
                continue;
            if (attained[f].empty())
                order.push_back(f);
            attained[f] += (attained[f].empty() ? "" : ",") + name + (limit ? ":limit" : "");
        }
    }
    std::vector<std::size_t> rest;
    for (std::size_t f = 0; f < families.size(); ++f)
        if (attained[f].empty())
            rest.push_back(f);
    std::sort(rest.begin(), rest.end(), [&](auto a, auto b) {
        return families[a].representative > families[b].representative;
    });
    order.insert(order.end(), rest.begin(), rest.end());

    std::ostringstream out;
    out << "family\t" << kLabels4 << "\torbit_size\tattained_by\n";
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& f = families[order[i]];
        out << i + 1 << '\t' << tabbed(f.representative) << '\t' << f.orbit_size << '\t'
            << (attained[order[i]].empty() ? "unattained" : attained[order[i]]) << '\n';
    }
    return out.str();
}

std::string psi_vectors() {
    std::ostringstream out;
    out << "state\td\t" << kLabels4 << '\n';
    for (const std::string name : {"psi1", "psi2", "psi3", "psi4", "psi5", "psi6"}) {
        const std::size_t max_d = (name == "psi1" || name == "psi2") ? 1 : 3;
        for (std::size_t d = 1; d <= max_d; ++d) {
            const RankVector rv = rank_vector(named_state(name, d));
            out << name << '\t' << d;
            for (auto r : rv.ranks)
                out << '\t' << r;
            out << '\n';
        }
    }
    return out.str();
}

std::string ssa_counterexample() {
    const RankVector rv = rank_vector(named_state("ssa_cx"));
    const RankInequality ssa = ssa_inequality();
    const Certificate c = holds(ssa, rv);
    std::ostringstream out;
    out << "state\t" << kLabels4 << '\n' << "ssa_cx";
    for (auto r : rv.ranks)
        out << '\t' << r;
    out << "\n\ninequality\t" << ssa.entropy_form() << '\n'
        << "rank_form\t" << ssa.rank_form() << '\n'
        << "lhs\t" << c.lhs.get_str() << '\n'
        << "rhs\t" << c.rhs.get_str() << '\n'
        << "verdict\t" << (c.holds ? "holds" : "VIOLATED") << '\n';
    return out.str();
}

std::string hypothesis_facet() {
    // Families reached by the constructions, taken from the ray table itself.
    std::set<IntVector> attained;
    std::istringstream rows(ray_table());
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) {
        std::istringstream ls(line);
        std::string family;
        IntVector rep(7);
        std::size_t orbit_size = 0;
        std::string by;
        ls >> family;
        for (auto& x : rep)
            ls >> x;
        ls >> orbit_size >> by;
        if (by == "unattained")
            continue;
        for (auto& x : orbit(rep, 4))
            attained.insert(primitive(x));
    }
    const auto gap = facet_gap(known_hrep(), VRep(7, {attained.begin(), attained.end()}));
    std::ostringstream out;
    out << kLabels4 << "\trank_form\n";
    for (const auto& g : gap) {
        RankInequality ineq{4, {}, "gap", Provenance::custom};
        for (const auto& x : g)
            ineq.coeffs.push_back(x.get_si());
        out << tabbed(g) << '\t' << ineq.rank_form() << '\n';
    }
    return out.str();
}

std::string conjecture_crossover() {
    const RankInequality conj = conjectured_inequality();
    std::ostringstream out;
    out << "state\tcrossover_d\tr_A*r_B*r_C\tr_AB*r_AC*r_AD\n";
    for (const std::string name : {"psi3", "psi4", "psi5", "psi6"}) {
        bool found = false;
        for (std::size_t d = 1; d <= 16 && !found; ++d) {
            const Certificate c = holds(conj, rank_vector(named_state(name, d)));
            if (c.holds)
                continue;
            // conj reads r_A r_B r_C <= r_AB r_AC r_AD: the certificate's rhs is the left product.
            out << name << '\t' << d << '\t' << c.rhs.get_str() << '\t' << c.lhs.get_str() << '\n';
            found = true;
        }
        if (!found)
            out << name << "\tnone<=16\t-\t-\n";
    }
    return out.str();
}

} // namespace

std::vector<std::string> table_names() {
    return {"ray-table", "psi-vectors", "ssa-counterexample", "hypothesis-facet", "conjecture-crossover"};
}

std::string generate_table(const std::string& name) {
    if (name == "ray-table")
        return ray_table();
    if (name == "psi-vectors")
        return psi_vectors();
    if (name == "ssa-counterexample")
        return ssa_counterexample();
    if (name == "hypothesis-facet")
        return hypothesis_facet();
    if (name == "conjecture-crossover")
        return conjecture_crossover();
    throw ContractError("unknown table '" + name + "'");
}

std::filesystem::path default_golden_dir() {
    if (const char* env = std::getenv("RANKLAB_DATA_DIR"); env && *env)
        return std::filesystem::path(env) / "golden";
    return std::filesystem::path(RANKLAB_DEFAULT_DATA_DIR) / "golden";
}

} // namespace ranklab::cli
