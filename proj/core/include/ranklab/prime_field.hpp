#pragma once

#include "ranklab/exact_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ranklab {

/// Largest prime below 2^16; default modulus for rank prescreening.
inline constexpr std::uint32_t kDefaultPrime = 65521;

bool is_prime(std::uint64_t n);

/// Dense matrix over F_p with p prime and p < 2^31.
class PrimeFieldMatrix {
public:
    /// Throws ContractError if `modulus` is not a prime below 2^31.
    PrimeFieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t modulus);

    /// Reduces signed integers into [0, modulus).
    static PrimeFieldMatrix from_integers(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values,
                                          std::uint32_t modulus);
    /// Reduces a matrix with integer real entries; throws ContractError otherwise.
    static PrimeFieldMatrix reduce(const ExactMatrix& m, std::uint32_t modulus);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return modulus_; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    /// Stores `value mod modulus`.
    void set(std::size_t r, std::size_t c, std::int64_t value);

    const std::vector<std::uint32_t>& entries() const { return entries_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::uint32_t modulus_;
    std::vector<std::uint32_t> entries_;
};

/// Rank over F_p. Never exceeds the rank of any integer lift.
std::size_t rank_mod_p(const PrimeFieldMatrix& m);

/// Rank over F_p of a row-major buffer; the buffer is used as scratch space.
std::size_t rank_mod_p_inplace(std::span<std::uint32_t> entries, std::size_t rows, std::size_t cols,
                               std::uint32_t modulus);

} // namespace ranklab
