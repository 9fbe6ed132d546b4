#include "ranklab/error.hpp"
#include "ranklab/states.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace ranklab {

namespace {

std::string strip_comment(const std::string& line) {
    const auto hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t)
        out.push_back(t);
    return out;
}

std::size_t parse_index(const std::string& t, std::size_t line_no) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("line " + std::to_string(line_no) + ": '" + t + "' is not a nonnegative integer");
    return std::stoul(t);
}

} // namespace

PureState parse_state(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::size_t> dims;
    AmplitudeMap amps;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tok = tokens(strip_comment(line));
        if (tok.empty())
            continue;
        if (dims.empty()) {
            for (const auto& t : tok) {
                dims.push_back(parse_index(t, line_no));
                if (dims.back() == 0)
                    throw ParseError("line " + std::to_string(line_no) + ": party dimension 0");
            }
            continue;
        }
        const std::size_t n = dims.size();
        if (tok.size() != n + 2)
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                             " indices and two rational parts");
        MultiIndex idx(n);
        for (std::size_t k = 0; k < n; ++k) {
            idx[k] = parse_index(tok[k], line_no);
            if (idx[k] >= dims[k])
                throw ParseError("line " + std::to_string(line_no) + ": index " + tok[k] + " out of range for party " +
                                 party_label(k));
        }
        GaussianRational value;
        try {
            value = GaussianRational(parse_rational(tok[n]), parse_rational(tok[n + 1]));
        } catch (const ParseError& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (value.is_zero())
            throw ParseError("line " + std::to_string(line_no) + ": zero amplitude");
        if (!amps.emplace(std::move(idx), std::move(value)).second)
            throw ParseError("line " + std::to_string(line_no) + ": duplicate multi-index");
    }
    if (dims.empty())
        throw ParseError("state file has no dimension line");
    if (amps.empty())
        throw ParseError("state file has no amplitudes");
    return {std::move(dims), std::move(amps)};
}

PureState load_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open state file " + path.string());
    return parse_state(in);
}

void write_state(std::ostream& out, const PureState& psi) {
    for (std::size_t k = 0; k < psi.party_count(); ++k)
        out << (k ? " " : "") << psi.dim(k);
    out << '\n';
    for (const auto& [idx, value] : psi.amplitudes()) {
        for (auto i : idx)
            out << i << ' ';
        out << value.real().get_str() << ' ' << value.imag().get_str() << '\n';
    }
}

} // namespace ranklab
