#include "ranklab/rank_vector.hpp"

#include "ranklab/error.hpp"
#include "ranklab/exact_matrix.hpp"
#include "ranklab/states.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <sstream>

namespace ranklab {

BipartitionIndex::BipartitionIndex(std::size_t n) : n_(n) {
    if (n < 2 || n > 20)
        throw ContractError("bipartitions need 2 <= n <= 20 parties, got " + std::to_string(n));
    const std::uint32_t full = PartySet::all(n).bits();
    position_by_bits_.assign(std::size_t{1} << n, -1);
    for (std::uint32_t bits = 1; bits < full; ++bits) {
        const PartySet s(bits);
        if (canonical(s) == s)
            subsets_.push_back(s);
    }
    std::sort(subsets_.begin(), subsets_.end(), [](PartySet a, PartySet b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a.members() < b.members();
    });
    for (std::size_t i = 0; i < subsets_.size(); ++i) {
        position_by_bits_[subsets_[i].bits()] = static_cast<std::int32_t>(i);
        position_by_bits_[subsets_[i].complement(n).bits()] = static_cast<std::int32_t>(i);
    }
}

std::optional<PartySet> BipartitionIndex::canonical(PartySet s) const {
    const PartySet c = s.complement(n_);
    if (s.empty() || c.empty())
        return std::nullopt;
    if (s.size() != c.size())
        return s.size() < c.size() ? s : c;
    return s.contains(0) ? s : c;
}

std::optional<std::size_t> BipartitionIndex::position(PartySet s) const {
    if (!s.is_subset_of(PartySet::all(n_)))
        throw ContractError("subset " + label(s) + " is outside " + std::to_string(n_) + " parties");
    const auto p = position_by_bits_[s.bits()];
    if (p < 0)
        return std::nullopt;
    return static_cast<std::size_t>(p);
}

std::vector<std::string> BipartitionIndex::labels() const {
    std::vector<std::string> out;
    for (auto s : subsets_)
        out.push_back(label(s));
    return out;
}

BipartitionIndex canonical_bipartitions(std::size_t n) { return BipartitionIndex(n); }

std::uint64_t RankVector::at(PartySet s) const {
    const BipartitionIndex index(n);
    const auto p = index.position(s);
    return p ? ranks[*p] : 1;
}

std::string RankVector::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < ranks.size(); ++i)
        os << (i ? "," : "") << ranks[i];
    os << ")";
    return os.str();
}

std::string log2_string(std::uint64_t r) {
    if (r != 0 && std::has_single_bit(r))
        return std::to_string(std::countr_zero(r));
    return "log2(" + std::to_string(r) + ")";
}

std::string RankVector::entropy_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < ranks.size(); ++i)
        out += (i ? "," : "") + log2_string(ranks[i]);
    return out + ")";
}

std::string RankVector::to_tsv() const {
    const BipartitionIndex index(n);
    std::ostringstream os;
    const auto labels = index.labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
        os << (i ? "\t" : "") << labels[i];
    os << '\n';
    for (std::size_t i = 0; i < ranks.size(); ++i)
        os << (i ? "\t" : "") << ranks[i];
    os << '\n';
    return os.str();
}

RankVector rank_vector(const PureState& psi) {
    if (psi.party_count() < 2)
        throw ContractError("rank vectors need at least two parties");
    const BipartitionIndex index(psi.party_count());
    RankVector rv{psi.party_count(), {}};
    rv.ranks.reserve(index.size());
    for (auto s : index.subsets())
        rv.ranks.push_back(schmidt_rank(psi, s));
    return rv;
}

RankVector permute_parties(const RankVector& rv, std::span<const std::size_t> perm) {
    const std::size_t n = rv.n;
    if (perm.size() != n)
        throw ContractError("permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (auto p : perm) {
        if (p >= n || seen[p])
            throw ContractError("not a permutation of the parties");
        seen[p] = true;
    }
    const BipartitionIndex index(n);
    RankVector out{n, std::vector<std::uint64_t>(rv.ranks.size())};
    for (std::size_t i = 0; i < index.size(); ++i) {
        std::uint32_t image = 0;
        for (auto p : index[i].members())
            image |= 1U << perm[p];
        out.ranks[*index.position(PartySet(image))] = rv.ranks[i];
    }
    return out;
}

double renyi_entropy(const PureState& psi, PartySet parties, double alpha) {
    if (!std::isfinite(alpha) || alpha < 0)
        throw ContractError("Renyi order must be a finite alpha >= 0");
    const PartySet full = PartySet::all(psi.party_count());
    if (!parties.is_subset_of(full))
        throw ContractError("subset outside the state's parties");
    if (parties.empty() || parties == full)
        return 0.0;
    if (alpha == 0.0)
        return std::log2(static_cast<double>(schmidt_rank(psi, parties)));

    const ExactMatrix m = matricize_support(psi, parties);
    Eigen::MatrixXcd a(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            a(r, c) = {m(r, c).real().get_d(), m(r, c).imag().get_d()};
    const Eigen::MatrixXcd gram = a.rows() <= a.cols() ? Eigen::MatrixXcd(a * a.adjoint())
                                                       : Eigen::MatrixXcd(a.adjoint() * a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    Eigen::VectorXd lambda = solver.eigenvalues().cwiseMax(0.0);
    lambda /= lambda.sum();

    constexpr double kCutoff = 1e-14;
    if (alpha == 1.0) {
        double s = 0;
        for (double l : lambda)
            if (l > kCutoff)
                s -= l * std::log2(l);
        return s;
    }
    double trace = 0;
    for (double l : lambda)
        if (l > kCutoff)
            trace += std::pow(l, alpha);
    return std::log2(trace) / (1.0 - alpha);
}

} // namespace ranklab
