#include "ranklab/prime_field.hpp"

#include "ranklab/error.hpp"

#include <algorithm>
#include <utility>

namespace ranklab {

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

namespace {

std::uint32_t reduce_signed(std::int64_t v, std::uint32_t p) {
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
    // Fermat: a^(p-2) mod p.
    std::uint64_t result = 1;
    std::uint64_t base = a;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1U)
            result = result * base % p;
        base = base * base % p;
        e >>= 1U;
    }
    return static_cast<std::uint32_t>(result);
}

} // namespace

PrimeFieldMatrix::PrimeFieldMatrix(std::size_t rows, std::size_t cols, std::uint32_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), entries_(rows * cols, 0) {
    if (modulus >= (1U << 31) || !is_prime(modulus))
        throw ContractError("modulus " + std::to_string(modulus) + " is not a prime below 2^31");
}

PrimeFieldMatrix PrimeFieldMatrix::from_integers(std::size_t rows, std::size_t cols,
                                                 std::span<const std::int64_t> values, std::uint32_t modulus) {
    if (values.size() != rows * cols)
        throw ShapeError("entry count does not match matrix shape");
    PrimeFieldMatrix m(rows, cols, modulus);
    for (std::size_t i = 0; i < values.size(); ++i)
        m.entries_[i] = reduce_signed(values[i], modulus);
    return m;
}

PrimeFieldMatrix PrimeFieldMatrix::reduce(const ExactMatrix& src, std::uint32_t modulus) {
    PrimeFieldMatrix m(src.rows(), src.cols(), modulus);
    for (std::size_t i = 0; i < src.entries().size(); ++i) {
        const auto& z = src.entries()[i];
        if (!z.is_real() || z.real().get_den() != 1)
            throw ContractError("reduction mod p needs integer entries, got " + z.to_string());
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), z.real().get_num_mpz_t(), modulus);
        m.entries_[i] = static_cast<std::uint32_t>(r.get_ui());
    }
    return m;
}

void PrimeFieldMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
    entries_[r * cols_ + c] = reduce_signed(value, modulus_);
}

std::size_t rank_mod_p_inplace(std::span<std::uint32_t> a, std::size_t rows, std::size_t cols,
                               std::uint32_t p) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != r)
            std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols, a.begin() + r * cols);
        const std::uint64_t inv = inverse_mod(a[r * cols + c], p);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const std::uint64_t f = a[i * cols + c] * inv % p;
            if (f == 0)
                continue;
            for (std::size_t j = c; j < cols; ++j) {
                const std::uint64_t sub = f * a[r * cols + j] % p;
                a[i * cols + j] = static_cast<std::uint32_t>((a[i * cols + j] + p - sub) % p);
            }
        }
        ++r;
    }
    return r;
}

std::size_t rank_mod_p(const PrimeFieldMatrix& m) {
    auto scratch = m.entries();
    return rank_mod_p_inplace(scratch, m.rows(), m.cols(), m.modulus());
}

} // namespace ranklab
