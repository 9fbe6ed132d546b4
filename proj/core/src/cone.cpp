#include "ranklab/cone.hpp"

#include "ranklab/rank_vector.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace ranklab {

IntVector primitive(IntVector v) {
    mpz_class g = 0;
    for (const auto& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0)
        throw ContractError("zero vector has no primitive form");
    if (g != 1)
        for (auto& x : v)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return v;
}

mpz_class dot(const IntVector& a, const IntVector& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
    return s;
}

std::string to_string(const IntVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? " " : "") + v[i].get_str();
    return out;
}

HRep::HRep(std::size_t d, std::vector<IntVector> r) : dim(d), rows(std::move(r)) {
    for (auto& row : rows) {
        if (row.size() != dim)
            throw ContractError("H-representation row has " + std::to_string(row.size()) + " entries, expected " +
                                std::to_string(dim));
        row = primitive(std::move(row));
    }
}

VRep::VRep(std::size_t d, std::vector<IntVector> r) : dim(d), rays(std::move(r)) {
    for (auto& ray : rays) {
        if (ray.size() != dim)
            throw ContractError("V-representation ray has " + std::to_string(ray.size()) + " entries, expected " +
                                std::to_string(dim));
        ray = primitive(std::move(ray));
    }
}

VRep VRep::sorted() const {
    VRep out = *this;
    std::sort(out.rays.begin(), out.rays.end());
    return out;
}

namespace {

using RationalRows = std::vector<std::vector<mpq_class>>;

RationalRows to_rational(std::span<const IntVector> rows, std::size_t dim) {
    RationalRows a;
    a.reserve(rows.size());
    for (const auto& r : rows) {
        auto& out = a.emplace_back(dim);
        for (std::size_t j = 0; j < dim; ++j)
            out[j] = r[j];
    }
    return a;
}

// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(RationalRows& a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && sgn(a[p][c]) == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[r]);
        const mpq_class inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j)
            a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || sgn(a[i][c]) == 0)
                continue;
            const mpq_class f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

IntVector integer_primitive(const std::vector<mpq_class>& v) {
    mpz_class l = 1;
    for (const auto& x : v)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), l.get_mpz_t(), v[i].get_den_mpz_t());
        out[i] = t * v[i].get_num();
    }
    return primitive(std::move(out));
}

struct Ray {
    IntVector v;
    boost::dynamic_bitset<> tight;
};

} // namespace

std::size_t rank_of(std::span<const IntVector> rows, std::size_t dim) {
    auto a = to_rational(rows, dim);
    return rref(a, dim).size();
}

std::vector<IntVector> nullspace(std::span<const IntVector> rows, std::size_t dim) {
    auto a = to_rational(rows, dim);
    const auto pivots = rref(a, dim);
    std::vector<bool> is_pivot(dim, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<IntVector> basis;
    for (std::size_t f = 0; f < dim; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<mpq_class> x(dim, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            x[pivots[i]] = -a[i][f];
        basis.push_back(integer_primitive(x));
    }
    return basis;
}

VRep extreme_rays(const HRep& h, const DDOptions& options) {
    const std::size_t dim = h.dim;
    const std::size_t m = h.rows.size();
    if (dim == 0)
        throw ContractError("cone of dimension 0");
    if (rank_of(h.rows, dim) < dim)
        throw NonPointedError("cone is not pointed: the inequalities have rank below " + std::to_string(dim),
                              nullspace(h.rows, dim));

    // Initial simplicial cone from dim independent rows.
    std::vector<std::size_t> basis;
    std::vector<IntVector> basis_rows;
    for (std::size_t i = 0; i < m && basis.size() < dim; ++i) {
        basis_rows.push_back(h.rows[i]);
        if (rank_of(basis_rows, dim) == basis_rows.size())
            basis.push_back(i);
        else
            basis_rows.pop_back();
    }

    // Columns of the inverse of the basis matrix are the initial rays.
    RationalRows aug(dim, std::vector<mpq_class>(2 * dim, 0));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j)
            aug[i][j] = basis_rows[i][j];
        aug[i][dim + i] = 1;
    }
    rref(aug, 2 * dim);

    boost::dynamic_bitset<> processed(m);
    for (auto b : basis)
        processed.set(b);
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<mpq_class> col(dim);
        for (std::size_t i = 0; i < dim; ++i)
            col[i] = aug[i][dim + j];
        Ray r{integer_primitive(col), boost::dynamic_bitset<>(m)};
        for (std::size_t i = 0; i < dim; ++i)
            if (i != j)
                r.tight.set(basis[i]);
        rays.push_back(std::move(r));
    }

    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < m; ++i)
        if (!processed.test(i))
            remaining.push_back(i);

    std::vector<mpz_class> values;
    while (!remaining.empty()) {
        // Insert next the inequality that cuts the fewest (+,-) ray pairs.
        std::size_t best = 0;
        std::size_t best_cost = SIZE_MAX;
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            std::size_t pos = 0, neg = 0;
            for (const auto& r : rays) {
                const int s = sgn(dot(h.rows[remaining[k]], r.v));
                pos += s > 0;
                neg += s < 0;
            }
            if (pos * neg < best_cost) {
                best_cost = pos * neg;
                best = k;
            }
        }
        const std::size_t row = remaining[best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        const IntVector& a = h.rows[row];

        values.resize(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            values[i] = dot(a, rays[i].v);
            if (sgn(values[i]) > 0)
                pos.push_back(i);
            else if (sgn(values[i]) < 0)
                neg.push_back(i);
        }

        std::vector<Ray> next;
        for (std::size_t p : pos)
            next.push_back(rays[p]);
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (sgn(values[i]) == 0) {
                next.push_back(rays[i]);
                next.back().tight.set(row);
            }
        for (std::size_t p : pos)
            for (std::size_t q : neg) {
                boost::dynamic_bitset<> common = rays[p].tight & rays[q].tight;
                if (dim >= 2 && common.count() < dim - 2)
                    continue;
                bool adjacent = true;
                if (options.adjacency == AdjacencyTest::combinatorial) {
                    for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                        if (r != p && r != q && common.is_subset_of(rays[r].tight))
                            adjacent = false;
                } else {
                    std::vector<IntVector> tight_rows;
                    for (auto b = common.find_first(); b != boost::dynamic_bitset<>::npos; b = common.find_next(b))
                        tight_rows.push_back(h.rows[b]);
                    adjacent = rank_of(tight_rows, dim) + 2 == dim;
                }
                if (!adjacent)
                    continue;
                IntVector v(dim);
                for (std::size_t j = 0; j < dim; ++j)
                    v[j] = values[p] * rays[q].v[j] - values[q] * rays[p].v[j];
                Ray r{primitive(std::move(v)), std::move(common)};
                r.tight.set(row);
                next.push_back(std::move(r));
            }
        rays = std::move(next);
        processed.set(row);
    }

    VRep out;
    out.dim = dim;
    for (auto& r : rays)
        out.rays.push_back(std::move(r.v));
    std::sort(out.rays.begin(), out.rays.end());
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());

    for (const auto& ray : out.rays) {
        std::vector<IntVector> tight_rows;
        for (const auto& row : h.rows) {
            const int s = sgn(dot(row, ray));
            if (s < 0)
                throw InternalError("double description produced an infeasible ray " + to_string(ray));
            if (s == 0)
                tight_rows.push_back(row);
        }
        if (rank_of(tight_rows, dim) + 1 != dim)
            throw InternalError("double description produced a non-extreme ray " + to_string(ray));
    }
    return out;
}

HRep FacetResult::as_hrep() const {
    HRep out = facets;
    for (const auto& e : equations) {
        out.rows.push_back(e);
        IntVector neg = e;
        for (auto& x : neg)
            x = -x;
        out.rows.push_back(std::move(neg));
    }
    return out;
}

FacetResult facets(const VRep& v, const DDOptions& options) {
    if (v.rays.empty())
        throw ContractError("facets of an empty ray list");
    FacetResult out;
    out.equations = nullspace(v.rays, v.dim);
    // Facet normals are the extreme rays of the dual cone restricted to the span of v.
    std::vector<IntVector> dual_rows = v.rays;
    for (const auto& e : out.equations) {
        dual_rows.push_back(e);
        IntVector neg = e;
        for (auto& x : neg)
            x = -x;
        dual_rows.push_back(std::move(neg));
    }
    const VRep normals = extreme_rays(HRep(v.dim, std::move(dual_rows)), options);
    out.facets = HRep(v.dim, normals.rays);
    return out;
}

IntVector permute_coordinates(const IntVector& x, std::size_t n, std::span<const std::size_t> perm) {
    const BipartitionIndex index(n);
    if (x.size() != index.size())
        throw ContractError("vector of length " + std::to_string(x.size()) + " does not index bipartitions of " +
                            std::to_string(n) + " parties");
    IntVector out(x.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        std::uint32_t image = 0;
        for (auto p : index[i].members())
            image |= 1U << perm[p];
        out[*index.position(PartySet(image))] = x[i];
    }
    return out;
}

std::vector<IntVector> orbit(const IntVector& x, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<IntVector> images;
    do {
        images.insert(permute_coordinates(x, n, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {images.begin(), images.end()};
}

std::vector<RayFamily> orbit_families(const VRep& v, std::size_t n) {
    const BipartitionIndex index(n);
    if (v.dim != index.size())
        throw ContractError("dimension " + std::to_string(v.dim) + " does not match " + std::to_string(n) +
                            " parties (" + std::to_string(index.size()) + " bipartitions)");
    std::vector<RayFamily> families;
    std::set<IntVector> assigned;
    for (const auto& ray : v.sorted().rays) {
        if (assigned.contains(ray))
            continue;
        const auto images = orbit(ray, n);
        RayFamily f;
        f.representative = images.back();
        f.orbit_size = images.size();
        const std::set<IntVector> image_set(images.begin(), images.end());
        for (const auto& other : v.rays)
            if (image_set.contains(other) && assigned.insert(other).second)
                f.members.push_back(other);
        std::sort(f.members.begin(), f.members.end());
        families.push_back(std::move(f));
    }
    std::sort(families.begin(), families.end(),
              [](const RayFamily& a, const RayFamily& b) { return a.representative < b.representative; });
    return families;
}

std::vector<IntVector> facet_gap(const HRep& known, const VRep& attained, const DDOptions& options) {
    if (known.dim != attained.dim)
        throw ContractError("facet gap: dimensions differ");
    for (const auto& ray : attained.rays)
        for (const auto& row : known.rows)
            if (sgn(dot(row, ray)) < 0)
                throw ContractError("attained ray (" + to_string(ray) + ") violates known inequality (" +
                                    to_string(row) + ")");
    const std::set<IntVector> known_rows(known.rows.begin(), known.rows.end());
    std::vector<IntVector> gap;
    for (const auto& f : facets(attained, options).as_hrep().rows)
        if (!known_rows.contains(f))
            gap.push_back(f);
    std::sort(gap.begin(), gap.end());
    return gap;
}

namespace {

std::vector<IntVector> parse_rows(std::istream& in, char expected_tag, std::size_t& dim) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream is(line);
        std::vector<std::string> tok;
        std::string t;
        while (is >> t)
            tok.push_back(t);
        if (!tok.empty())
            lines.push_back(std::move(tok));
    }
    std::size_t at = 0;
    if (at < lines.size() && lines[at].size() == 1 && (lines[at][0] == "H" || lines[at][0] == "V")) {
        if (lines[at][0][0] != expected_tag)
            throw ParseError(std::string("expected a ") + expected_tag + "-representation, found tag " + lines[at][0]);
        ++at;
    }
    if (at >= lines.size() || lines[at].size() != 2)
        throw ParseError("missing 'dim m' header line");
    std::size_t m = 0;
    try {
        dim = std::stoul(lines[at][0]);
        m = std::stoul(lines[at][1]);
    } catch (const std::exception&) {
        throw ParseError("malformed 'dim m' header line");
    }
    ++at;
    if (lines.size() - at != m)
        throw ParseError("header announces " + std::to_string(m) + " rows, found " + std::to_string(lines.size() - at));
    std::vector<IntVector> rows;
    for (; at < lines.size(); ++at) {
        if (lines[at].size() != dim)
            throw ParseError("row " + std::to_string(rows.size() + 1) + " has " + std::to_string(lines[at].size()) +
                             " entries, expected " + std::to_string(dim));
        IntVector row;
        for (const auto& t : lines[at]) {
            mpz_class x;
            if (x.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0)
                throw ParseError("'" + t + "' is not an integer");
            row.push_back(std::move(x));
        }
        if (std::all_of(row.begin(), row.end(), [](const auto& x) { return x == 0; }))
            throw ParseError("row " + std::to_string(rows.size() + 1) + " is zero");
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class Rep>
Rep load(const std::filesystem::path& path, Rep (*parse)(std::istream&)) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    return parse(in);
}

void write_rows(std::ostream& out, char tag, std::size_t dim, const std::vector<IntVector>& rows) {
    out << tag << '\n' << dim << ' ' << rows.size() << '\n';
    for (const auto& r : rows)
        out << to_string(r) << '\n';
}

} // namespace

HRep parse_hrep(std::istream& in) {
    std::size_t dim = 0;
    auto rows = parse_rows(in, 'H', dim);
    return {dim, std::move(rows)};
}

VRep parse_vrep(std::istream& in) {
    std::size_t dim = 0;
    auto rows = parse_rows(in, 'V', dim);
    return {dim, std::move(rows)};
}

HRep load_hrep(const std::filesystem::path& path) { return load<HRep>(path, parse_hrep); }
VRep load_vrep(const std::filesystem::path& path) { return load<VRep>(path, parse_vrep); }
void write_hrep(std::ostream& out, const HRep& h) { write_rows(out, 'H', h.dim, h.rows); }
void write_vrep(std::ostream& out, const VRep& v) { write_rows(out, 'V', v.dim, v.rays); }

} // namespace ranklab
