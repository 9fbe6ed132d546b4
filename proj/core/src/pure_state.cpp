#include "ranklab/pure_state.hpp"

#include "ranklab/error.hpp"
#include "ranklab/party_set.hpp"

#include <utility>

namespace ranklab {

PureState::PureState(std::vector<std::size_t> party_dims, AmplitudeMap amplitudes)
    : dims_(std::move(party_dims)), amps_(std::move(amplitudes)) {
    if (dims_.empty())
        throw ContractError("a pure state needs at least one party");
    if (dims_.size() > kMaxParties)
        throw ContractError("at most " + std::to_string(kMaxParties) + " parties are supported");
    for (auto d : dims_)
        if (d == 0)
            throw ContractError("party dimensions must be >= 1");
    std::erase_if(amps_, [](const auto& kv) { return kv.second.is_zero(); });
    if (amps_.empty())
        throw ContractError("the zero vector is not a state");
    for (const auto& [index, value] : amps_) {
        if (index.size() != dims_.size())
            throw ContractError("multi-index has " + std::to_string(index.size()) + " entries, expected " +
                                std::to_string(dims_.size()));
        for (std::size_t k = 0; k < index.size(); ++k)
            if (index[k] >= dims_[k])
                throw ContractError("index " + std::to_string(index[k]) + " out of range for party " +
                                    party_label(k) + " of dimension " + std::to_string(dims_[k]));
    }
}

void accumulate(AmplitudeMap& amps, const MultiIndex& index, const GaussianRational& value) {
    if (value.is_zero())
        return;
    auto [it, inserted] = amps.try_emplace(index, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero())
            amps.erase(it);
    }
}

std::string party_label(std::size_t party) {
    if (party < 26)
        return std::string(1, static_cast<char>('A' + party));
    return "P" + std::to_string(party);
}

std::string label(PartySet s) {
    if (s.empty())
        return "{}";
    std::string out;
    for (auto p : s.members())
        out += party_label(p);
    return out;
}

} // namespace ranklab
