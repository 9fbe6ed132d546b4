#include "ranklab/inequality.hpp"

#include "ranklab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ranklab {

std::string_view to_string(Provenance p) {
    switch (p) {
    case Provenance::nonneg: return "nonneg";
    case Provenance::subadd: return "subadd";
    case Provenance::thm1: return "thm1";
    case Provenance::thm2: return "thm2";
    case Provenance::hypothesis: return "hypothesis";
    case Provenance::conjectured: return "conjectured";
    case Provenance::custom: return "custom";
    }
    return "custom";
}

void RankInequality::validate() const {
    const BipartitionIndex index(n);
    if (coeffs.size() != index.size())
        throw ContractError("inequality '" + name + "' has " + std::to_string(coeffs.size()) + " coefficients, " +
                            std::to_string(n) + " parties need " + std::to_string(index.size()));
    if (std::all_of(coeffs.begin(), coeffs.end(), [](auto c) { return c == 0; }))
        throw ContractError("inequality '" + name + "' has no nonzero coefficient");
}

namespace {

std::string side(const BipartitionIndex& index, const std::vector<std::int64_t>& coeffs, int sign, bool log_form) {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const std::int64_t c = coeffs[i] * sign;
        if (c <= 0)
            continue;
        const std::string l = label(index[i]);
        if (log_form) {
            out += (out.empty() ? "" : " + ") + (c > 1 ? std::to_string(c) : std::string()) + "S0(" + l + ")";
        } else {
            out += (out.empty() ? "" : "*") + ("r_" + l) + (c > 1 ? "^" + std::to_string(c) : std::string());
        }
    }
    if (out.empty())
        return log_form ? "0" : "1";
    return out;
}

} // namespace

std::string RankInequality::entropy_form() const {
    const BipartitionIndex index(n);
    return side(index, coeffs, 1, true) + " >= " + side(index, coeffs, -1, true);
}

std::string RankInequality::rank_form() const {
    const BipartitionIndex index(n);
    return side(index, coeffs, -1, false) + " <= " + side(index, coeffs, 1, false);
}

RankInequality make_inequality(std::size_t n, std::span<const std::pair<std::int64_t, PartySet>> terms,
                               std::string name, Provenance provenance) {
    const BipartitionIndex index(n);
    RankInequality ineq{n, std::vector<std::int64_t>(index.size(), 0), std::move(name), provenance};
    for (const auto& [c, s] : terms)
        if (auto p = index.position(s))
            ineq.coeffs[*p] += c;
    ineq.validate();
    return ineq;
}

Family parse_family(std::string_view name) {
    if (name == "nonneg") return Family::nonneg;
    if (name == "subadd") return Family::subadd;
    if (name == "thm1") return Family::thm1;
    if (name == "thm2") return Family::thm2;
    if (name == "hypothesis") return Family::hypothesis;
    throw ContractError("unknown inequality family '" + std::string(name) + "'");
}

std::string_view to_string(Family f) {
    switch (f) {
    case Family::nonneg: return "nonneg";
    case Family::subadd: return "subadd";
    case Family::thm1: return "thm1";
    case Family::thm2: return "thm2";
    case Family::hypothesis: return "hypothesis";
    }
    return "nonneg";
}

namespace {

struct Template {
    std::size_t letters;
    // (coefficient, letter mask) with bit 0 = A, bit 1 = B, bit 2 = C
    std::vector<std::pair<std::int64_t, unsigned>> terms;
    Provenance provenance;
};

Template template_of(Family f) {
    switch (f) {
    case Family::nonneg: return {1, {{1, 0b001}}, Provenance::nonneg};
    case Family::subadd: return {2, {{1, 0b001}, {1, 0b010}, {-1, 0b011}}, Provenance::subadd};
    case Family::thm1: return {3, {{1, 0b011}, {1, 0b101}, {-1, 0b001}}, Provenance::thm1};
    case Family::thm2: return {3, {{1, 0b011}, {1, 0b101}, {1, 0b110}, {-2, 0b001}}, Provenance::thm2};
    case Family::hypothesis: return {3, {{1, 0b011}, {1, 0b101}, {-1, 0b110}}, Provenance::hypothesis};
    }
    throw ContractError("unknown family");
}

} // namespace

std::vector<RankInequality> instantiate_family(Family family, std::size_t n) {
    const BipartitionIndex index(n);
    const Template t = template_of(family);
    const std::uint32_t full = PartySet::all(n).bits();
    std::vector<RankInequality> out;
    std::set<std::vector<std::int64_t>> seen;

    std::vector<PartySet> letters(t.letters);
    auto emit = [&] {
        std::vector<std::pair<std::int64_t, PartySet>> terms;
        for (const auto& [c, mask] : t.terms) {
            PartySet s;
            for (std::size_t l = 0; l < t.letters; ++l)
                if (mask & (1U << l))
                    s = s | letters[l];
            terms.emplace_back(c, s);
        }
        std::vector<std::int64_t> coeffs(index.size(), 0);
        for (const auto& [c, s] : terms)
            if (auto p = index.position(s))
                coeffs[*p] += c;
        if (std::all_of(coeffs.begin(), coeffs.end(), [](auto c) { return c == 0; }))
            return;
        if (!seen.insert(coeffs).second)
            return;
        std::string name = std::string(to_string(family)) + "[";
        for (std::size_t l = 0; l < t.letters; ++l)
            name += (l ? "," : "") + label(letters[l]);
        name += "]";
        out.push_back({n, std::move(coeffs), std::move(name), t.provenance});
    };

    for (std::uint32_t a = 1; a <= full; ++a) {
        letters[0] = PartySet(a);
        if (t.letters == 1) {
            emit();
            continue;
        }
        for (std::uint32_t b = 1; b <= full; ++b) {
            if (a & b)
                continue;
            letters[1] = PartySet(b);
            if (t.letters == 2) {
                emit();
                continue;
            }
            for (std::uint32_t c = 1; c <= full; ++c) {
                if ((a | b) & c)
                    continue;
                letters[2] = PartySet(c);
                emit();
            }
        }
    }
    return out;
}

std::vector<RankInequality> known_set(std::size_t n) {
    if (n != 4)
        throw UnsupportedError("the known inequality set is only available for n = 4");
    std::vector<RankInequality> out;
    std::set<std::vector<std::int64_t>> seen;
    for (auto f : {Family::nonneg, Family::subadd, Family::thm1, Family::thm2})
        for (auto& ineq : instantiate_family(f, n))
            if (seen.insert(ineq.coeffs).second)
                out.push_back(std::move(ineq));
    return out;
}

RankInequality conjectured_inequality() {
    const std::pair<std::int64_t, PartySet> terms[] = {
        {-1, PartySet::of({0})},    {-1, PartySet::of({1})},    {-1, PartySet::of({2})},
        {1, PartySet::of({0, 1})}, {1, PartySet::of({0, 2})}, {1, PartySet::of({0, 3})}};
    return make_inequality(4, terms, "conjectured[rArBrC<=rABrACrAD]", Provenance::conjectured);
}

RankInequality ssa_inequality() {
    const std::pair<std::int64_t, PartySet> terms[] = {{1, PartySet::of({0, 1})},
                                                       {1, PartySet::of({0, 2})},
                                                       {-1, PartySet::of({0})},
                                                       {-1, PartySet::of({0, 1, 2})}};
    return make_inequality(4, terms, "ssa[A,B,C]", Provenance::custom);
}

RankInequality permute_parties(const RankInequality& ineq, std::span<const std::size_t> perm) {
    const BipartitionIndex index(ineq.n);
    if (perm.size() != ineq.n)
        throw ContractError("permutation has wrong length");
    RankInequality out = ineq;
    for (std::size_t i = 0; i < index.size(); ++i) {
        std::uint32_t image = 0;
        for (auto p : index[i].members()) {
            if (perm[p] >= ineq.n)
                throw ContractError("not a permutation of the parties");
            image |= 1U << perm[p];
        }
        out.coeffs[*index.position(PartySet(image))] = ineq.coeffs[i];
    }
    return out;
}

Certificate holds(const RankInequality& ineq, const RankVector& rv) {
    if (ineq.n != rv.n || ineq.coeffs.size() != rv.ranks.size())
        throw ContractError("inequality '" + ineq.name + "' is for " + std::to_string(ineq.n) +
                            " parties, rank vector for " + std::to_string(rv.n));
    Certificate cert{1, 1, false};
    mpz_class power;
    for (std::size_t i = 0; i < ineq.coeffs.size(); ++i) {
        const std::int64_t c = ineq.coeffs[i];
        if (c == 0)
            continue;
        mpz_class base;
        mpz_set_ui(base.get_mpz_t(), rv.ranks[i]);
        mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(c > 0 ? c : -c));
        (c > 0 ? cert.lhs : cert.rhs) *= power;
    }
    cert.holds = cert.lhs >= cert.rhs;
    return cert;
}

bool AuditReport::all_hold() const { return violations() == 0; }

std::size_t AuditReport::violations() const {
    return static_cast<std::size_t>(
        std::count_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.certificate.holds; }));
}

std::string AuditReport::to_tsv() const {
    std::ostringstream os;
    os << "name\tprovenance\tverdict\tlhs\trhs\tinequality\n";
    for (const auto& v : verdicts)
        os << v.inequality.name << '\t' << to_string(v.inequality.provenance) << '\t'
           << (v.certificate.holds ? "holds" : "VIOLATED") << '\t' << v.certificate.lhs.get_str() << '\t'
           << v.certificate.rhs.get_str() << '\t' << v.inequality.entropy_form() << '\n';
    return os.str();
}

std::string AuditReport::to_json() const {
    nlohmann::json j;
    const BipartitionIndex index(ranks.n);
    j["parties"] = ranks.n;
    j["labels"] = index.labels();
    j["ranks"] = ranks.ranks;
    j["violations"] = violations();
    auto& list = j["verdicts"] = nlohmann::json::array();
    for (const auto& v : verdicts)
        list.push_back({{"name", v.inequality.name},
                        {"provenance", std::string(to_string(v.inequality.provenance))},
                        {"coefficients", v.inequality.coeffs},
                        {"holds", v.certificate.holds},
                        {"lhs", v.certificate.lhs.get_str()},
                        {"rhs", v.certificate.rhs.get_str()}});
    return j.dump(2);
}

AuditReport audit_ranks(const RankVector& rv, std::span<const RankInequality> inequalities) {
    AuditReport report{rv, {}};
    for (const auto& ineq : inequalities)
        report.verdicts.push_back({ineq, holds(ineq, rv)});
    return report;
}

AuditReport audit_state(const PureState& psi, std::span<const RankInequality> inequalities) {
    return audit_ranks(rank_vector(psi), inequalities);
}

std::vector<RankInequality> parse_inequalities(std::istream& in) {
    std::vector<RankInequality> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'name : coefficients'");
        std::string name = line.substr(0, colon);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        if (name.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty inequality name");
        std::istringstream is(line.substr(colon + 1));
        std::vector<std::int64_t> coeffs;
        std::string tok;
        while (is >> tok) {
            std::size_t used = 0;
            std::int64_t c = 0;
            try {
                c = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw ParseError("line " + std::to_string(line_no) + ": '" + tok + "' is not an integer");
            coeffs.push_back(c);
        }
        std::size_t n = 2;
        while (n <= 20 && (std::size_t{1} << (n - 1)) - 1 < coeffs.size())
            ++n;
        if (n > 20 || (std::size_t{1} << (n - 1)) - 1 != coeffs.size())
            throw ParseError("line " + std::to_string(line_no) + ": " + std::to_string(coeffs.size()) +
                             " coefficients is not 2^(n-1)-1 for any n");
        RankInequality ineq{n, std::move(coeffs), std::move(name), Provenance::custom};
        try {
            ineq.validate();
        } catch (const ContractError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        out.push_back(std::move(ineq));
    }
    return out;
}

std::vector<RankInequality> load_inequalities(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open inequality file " + path.string());
    return parse_inequalities(in);
}

void write_inequalities(std::ostream& out, std::span<const RankInequality> inequalities) {
    for (const auto& ineq : inequalities) {
        out << ineq.name << " :";
        for (auto c : ineq.coeffs)
            out << ' ' << c;
        out << '\n';
    }
}

} // namespace ranklab
