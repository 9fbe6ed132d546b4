#pragma once

#include "ranklab/gaussian_rational.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace ranklab {

/// One 0-based index per party.
using MultiIndex = std::vector<std::size_t>;
using AmplitudeMap = std::map<MultiIndex, GaussianRational>;

/// Unnormalized multipartite pure state with a sparse exact coefficient tensor.
///
/// Invariants: at least one party, every dimension >= 1, every index in range,
/// no stored zero amplitudes and at least one nonzero amplitude.
class PureState {
public:
    /// Zero entries in `amplitudes` are dropped; throws ContractError for an
    /// invalid shape, an out-of-range index or an all-zero state.
    PureState(std::vector<std::size_t> party_dims, AmplitudeMap amplitudes);

    std::size_t party_count() const { return dims_.size(); }
    const std::vector<std::size_t>& party_dims() const { return dims_; }
    std::size_t dim(std::size_t party) const { return dims_.at(party); }
    const AmplitudeMap& amplitudes() const { return amps_; }
    std::size_t term_count() const { return amps_.size(); }

    friend bool operator==(const PureState&, const PureState&) = default;

private:
    std::vector<std::size_t> dims_;
    AmplitudeMap amps_;
};

/// Adds `value` to the amplitude at `index`, creating or erasing the entry.
void accumulate(AmplitudeMap& amps, const MultiIndex& index, const GaussianRational& value);

} // namespace ranklab
