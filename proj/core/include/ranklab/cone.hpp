#pragma once

#include "ranklab/error.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ranklab {

using IntVector = std::vector<mpz_class>;

/// Divides by the gcd of the entries; direction is preserved.
/// Throws ContractError for the zero vector.
IntVector primitive(IntVector v);

mpz_class dot(const IntVector& a, const IntVector& b);

/// Cone {x : a.x >= 0 for every row a}. Rows are stored primitive.
struct HRep {
    std::size_t dim = 0;
    std::vector<IntVector> rows;

    /// Normalizes rows; throws ContractError on zero rows or length mismatch.
    HRep(std::size_t dim, std::vector<IntVector> rows);
    HRep() = default;
};

/// Cone generated by nonnegative combinations of rays. Rays are stored primitive.
struct VRep {
    std::size_t dim = 0;
    std::vector<IntVector> rays;

    VRep(std::size_t dim, std::vector<IntVector> rays);
    VRep() = default;

    /// Sorted copy, for order-independent comparison.
    VRep sorted() const;
};

/// Raised by extreme_rays when the cone contains a line.
class NonPointedError : public ContractError {
public:
    NonPointedError(std::string what, std::vector<IntVector> lineality)
        : ContractError(std::move(what)), lineality_(std::move(lineality)) {}
    const std::vector<IntVector>& lineality_basis() const { return lineality_; }

private:
    std::vector<IntVector> lineality_;
};

enum class AdjacencyTest {
    combinatorial, ///< no third ray's tight set contains the pair's common tight set
    algebraic,     ///< the common tight rows have rank dim - 2
};

struct DDOptions {
    AdjacencyTest adjacency = AdjacencyTest::combinatorial;
};

/// Complete irredundant extreme rays of a pointed cone by the double
/// description method, inserting the inequality that cuts the fewest ray
/// pairs next. Output rays are primitive and sorted.
/// Throws NonPointedError (carrying a lineality basis) if the cone has lines.
VRep extreme_rays(const HRep& h, const DDOptions& options = {});

struct FacetResult {
    /// Facet normals within the linear span of the rays.
    HRep facets;
    /// Basis of the equations l.x = 0 cutting out that span; empty if full-dimensional.
    std::vector<IntVector> equations;

    /// facets plus both orientations of every equation.
    HRep as_hrep() const;
};

/// Irredundant facets of the cone spanned by v. Throws ContractError for an empty ray list.
FacetResult facets(const VRep& v, const DDOptions& options = {});

/// Integer basis of {x : A x = 0} for the given rows.
std::vector<IntVector> nullspace(std::span<const IntVector> rows, std::size_t dim);

/// Rank of the given integer rows.
std::size_t rank_of(std::span<const IntVector> rows, std::size_t dim);

/// Image of x under the party permutation (party k -> perm[k]) acting on
/// coordinates indexed by the canonical bipartitions of n parties.
IntVector permute_coordinates(const IntVector& x, std::size_t n, std::span<const std::size_t> perm);

/// All distinct images of x under the symmetric group on n parties.
std::vector<IntVector> orbit(const IntVector& x, std::size_t n);

struct RayFamily {
    /// Lexicographically largest vector of the full orbit.
    IntVector representative;
    /// The input rays belonging to this orbit, sorted.
    std::vector<IntVector> members;
    /// Size of the full orbit under party permutations.
    std::size_t orbit_size = 0;
};

/// Partitions rays into party-permutation orbits, sorted by representative.
/// Throws ContractError unless v.dim = 2^(n-1) - 1.
std::vector<RayFamily> orbit_families(const VRep& v, std::size_t n);

/// Facets of cone(attained) that are not rows of `known`.
/// Throws ContractError naming the first attained ray that violates a known row.
std::vector<IntVector> facet_gap(const HRep& known, const VRep& attained, const DDOptions& options = {});

/// Text format: optional tag line `H` or `V`, then `dim m`, then m integer rows.
HRep parse_hrep(std::istream& in);
VRep parse_vrep(std::istream& in);
HRep load_hrep(const std::filesystem::path& path);
VRep load_vrep(const std::filesystem::path& path);
void write_hrep(std::ostream& out, const HRep& h);
void write_vrep(std::ostream& out, const VRep& v);

std::string to_string(const IntVector& v);

} // namespace ranklab
