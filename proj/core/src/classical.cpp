#include "ranklab/classical.hpp"

#include "ranklab/error.hpp"
#include "ranklab/rng.hpp"
#include "ranklab/states.hpp"

#include <fstream>
#include <sstream>

namespace ranklab {

SupportSet::SupportSet(std::vector<std::size_t> alphabet_sizes, std::set<std::vector<std::size_t>> points)
    : alphabets_(std::move(alphabet_sizes)), points_(std::move(points)) {
    if (alphabets_.empty() || alphabets_.size() >= kMaxParties)
        throw ContractError("support needs between 1 and 31 coordinates");
    for (auto a : alphabets_)
        if (a == 0)
            throw ContractError("alphabet sizes must be positive");
    if (points_.empty())
        throw ContractError("support must be nonempty");
    for (const auto& p : points_) {
        if (p.size() != alphabets_.size())
            throw ContractError("support tuple has the wrong length");
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] >= alphabets_[i])
                throw ContractError("support tuple out of alphabet range");
    }
}

std::string coordinate_label(PartySet s) {
    std::string out;
    for (auto m : s.members()) {
        if (!out.empty() && m >= 9)
            out += '.';
        out += std::to_string(m + 1);
    }
    return out;
}

std::map<PartySet, std::uint64_t> support_sizes(const SupportSet& s) {
    std::map<PartySet, std::uint64_t> out;
    const std::uint32_t full = PartySet::all(s.n()).bits();
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const auto members = PartySet(mask).members();
        std::set<std::vector<std::size_t>> projected;
        for (const auto& p : s.points()) {
            std::vector<std::size_t> x;
            for (auto m : members)
                x.push_back(p[m]);
            projected.insert(std::move(x));
        }
        out[PartySet(mask)] = projected.size();
    }
    return out;
}

namespace {

std::string s_of(PartySet s) { return "s_" + coordinate_label(s); }

mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

} // namespace

bool ClassicalReport::all_hold() const {
    for (const auto& v : verdicts)
        if (!v.holds)
            return false;
    return true;
}

std::string ClassicalReport::to_tsv() const {
    std::ostringstream out;
    out << "# support sizes\n";
    for (const auto& [set, size] : sizes)
        out << s_of(set) << "\t" << size << "\n";
    out << "# kind\tinstance\tlhs\trhs\tverdict\n";
    for (const auto& v : verdicts)
        out << v.kind << "\t" << v.instance << "\t" << v.lhs.get_str() << "\t" << v.rhs.get_str() << "\t"
            << (v.holds ? "holds" : "VIOLATED") << "\n";
    return out.str();
}

ClassicalReport audit_classical(const SupportSet& s) {
    ClassicalReport report;
    report.n = s.n();
    report.sizes = support_sizes(s);
    const auto& sz = report.sizes;
    const std::uint32_t full = PartySet::all(s.n()).bits();
    auto add = [&](std::string kind, std::string instance, mpz_class lhs, mpz_class rhs) {
        const bool ok = lhs <= rhs;
        report.verdicts.push_back({std::move(kind), std::move(instance), std::move(lhs), std::move(rhs), ok});
    };

    for (std::uint32_t j = 1; j <= full; ++j)
        for (std::uint32_t i = (j - 1) & j; i; i = (i - 1) & j)
            add("monotone", s_of(PartySet(i)) + " <= " + s_of(PartySet(j)), sz.at(PartySet(i)),
                sz.at(PartySet(j)));

    for (std::uint32_t i = 1; i <= full; ++i)
        for (std::uint32_t j = i + 1; j <= full; ++j) {
            if (i & j)
                continue;
            const PartySet u(i | j);
            add("submult", s_of(u) + " <= " + s_of(PartySet(i)) + "*" + s_of(PartySet(j)), sz.at(u),
                mpz_class(sz.at(PartySet(i))) * sz.at(PartySet(j)));
        }

    for (std::uint32_t j = 1; j <= full; ++j) {
        const PartySet big(j);
        const std::size_t size = big.size();
        for (std::size_t k = 1; k <= size; ++k) {
            const mpz_class exponent = binomial(size - 1, k - 1);
            mpz_class lhs;
            mpz_pow_ui(lhs.get_mpz_t(), mpz_class(sz.at(big)).get_mpz_t(), exponent.get_ui());
            mpz_class rhs = 1;
            std::string factors;
            for (std::uint32_t i = j; i; i = (i - 1) & j) {
                if (PartySet(i).size() != k)
                    continue;
                rhs *= sz.at(PartySet(i));
                factors.insert(0, (factors.empty() ? "" : "*"));
                factors.insert(0, s_of(PartySet(i)));
            }
            add("shearer", s_of(big) + "^" + exponent.get_str() + " <= " + factors, lhs, rhs);
        }
    }
    return report;
}

PureState purification(const SupportSet& s) {
    std::vector<std::size_t> dims{s.points().size()};
    dims.insert(dims.end(), s.alphabet_sizes().begin(), s.alphabet_sizes().end());
    AmplitudeMap amps;
    std::size_t label = 0;
    for (const auto& p : s.points()) {
        MultiIndex idx{label++};
        idx.insert(idx.end(), p.begin(), p.end());
        amps.emplace(std::move(idx), GaussianRational(1));
    }
    return {std::move(dims), std::move(amps)};
}

std::vector<BridgeRow> purification_bridge(const SupportSet& s) {
    const PureState psi = purification(s);
    std::vector<BridgeRow> rows;
    for (const auto& [set, size] : support_sizes(s))
        rows.push_back({set, size, schmidt_rank(psi, PartySet(set.bits() << 1))});
    return rows;
}

SupportSet random_support(std::size_t n, std::size_t max_alphabet, std::uint64_t seed) {
    if (n == 0 || max_alphabet == 0)
        throw ContractError("random support needs n >= 1 and a positive alphabet bound");
    Rng rng(seed);
    std::vector<std::size_t> alphabets(n);
    for (auto& a : alphabets)
        a = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_alphabet)));
    std::set<std::vector<std::size_t>> points;
    std::vector<std::size_t> x(n, 0);
    for (;;) {
        if (rng.uniform(0, 1) == 1)
            points.insert(x);
        std::size_t i = 0;
        while (i < n && ++x[i] == alphabets[i])
            x[i++] = 0;
        if (i == n)
            break;
    }
    if (points.empty()) {
        for (std::size_t i = 0; i < n; ++i)
            x[i] = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(alphabets[i]) - 1));
        points.insert(x);
    }
    return {std::move(alphabets), std::move(points)};
}

SupportSet parse_support(std::istream& in) {
    std::vector<std::size_t> alphabets;
    std::set<std::vector<std::size_t>> points;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::size_t> values;
        std::string tok;
        while (ls >> tok) {
            std::size_t pos = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || tok[0] == '-')
                throw ParseError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                                 tok + "'");
            values.push_back(static_cast<std::size_t>(v));
        }
        if (values.empty())
            continue;
        if (!have_header) {
            alphabets = std::move(values);
            have_header = true;
            continue;
        }
        if (values.size() != alphabets.size())
            throw ParseError("line " + std::to_string(line_no) + ": tuple has " + std::to_string(values.size()) +
                             " entries, expected " + std::to_string(alphabets.size()));
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] >= alphabets[i])
                throw ParseError("line " + std::to_string(line_no) + ": entry out of alphabet range");
        points.insert(std::move(values));
    }
    if (!have_header)
        throw ParseError("support file has no alphabet line");
    if (points.empty())
        throw ParseError("support file lists no tuples");
    try {
        return {std::move(alphabets), std::move(points)};
    } catch (const ContractError& e) {
        throw ParseError(e.what());
    }
}

SupportSet load_support(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open support file " + path.string());
    return parse_support(in);
}

} // namespace ranklab
