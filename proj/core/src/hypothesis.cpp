#include "ranklab/hypothesis.hpp"

#include "ranklab/error.hpp"
#include "ranklab/prime_field.hpp"
#include "ranklab/rng.hpp"
#include "ranklab/states.hpp"

#include <gmpxx.h>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <numeric>
#include <sstream>
#include <mutex>
#include <thread>

namespace ranklab {

namespace {

void check_lists(std::span<const ExactMatrix> r, std::span<const ExactMatrix> s) {
    if (r.empty() || r.size() != s.size())
        throw ShapeError("R and S lists must be nonempty and of equal length");
    for (const auto& m : r)
        if (m.rows() != r.front().rows() || m.cols() != r.front().cols() || m.empty())
            throw ShapeError("all R_k must share one nonempty shape");
    for (const auto& m : s)
        if (m.rows() != s.front().rows() || m.cols() != s.front().cols() || m.empty())
            throw ShapeError("all S_k must share one nonempty shape");
}

// One instance as flat integer entries: K blocks of R, then K blocks of S.
struct Instance {
    std::vector<std::int64_t> r;
    std::vector<std::int64_t> s;
};

class Evaluator {
public:
    Evaluator(std::size_t k, MatrixShape rs, MatrixShape ss, std::uint32_t p)
        : k_(k), rs_(rs), ss_(ss), p_(p), m_(rs.rows * ss.rows * rs.cols * ss.cols), g_(m_.size()) {}

    // Both sides mod p.
    HypothesisSides sides(const Instance& x) {
        std::fill(m_.begin(), m_.end(), 0);
        std::fill(g_.begin(), g_.end(), 0);
        const std::size_t m1 = rs_.rows, n1 = rs_.cols, m2 = ss_.rows, n2 = ss_.cols;
        const std::size_t cols_m = n1 * n2, cols_g = n1 * m2;
        for (std::size_t k = 0; k < k_; ++k) {
            const std::int64_t* rk = x.r.data() + k * rs_.size();
            const std::int64_t* sk = x.s.data() + k * ss_.size();
            for (std::size_t a = 0; a < m1; ++a)
                for (std::size_t b = 0; b < n1; ++b) {
                    const std::int64_t u = rk[a * n1 + b];
                    if (u == 0)
                        continue;
                    for (std::size_t c = 0; c < m2; ++c)
                        for (std::size_t d = 0; d < n2; ++d) {
                            const std::int64_t v = u * sk[c * n2 + d];
                            m_[(a * m2 + c) * cols_m + b * n2 + d] += v;
                            g_[(a * n2 + d) * cols_g + b * m2 + c] += v;
                        }
                }
        }
        reduce(m_, bm_);
        reduce(g_, bg_);
        const std::size_t rank_m = rank_mod_p_inplace(bm_, m1 * m2, cols_m, p_);
        const std::size_t rank_g = rank_mod_p_inplace(bg_, m1 * n2, cols_g, p_);
        return {rank_g, k_ * rank_m};
    }

private:
    void reduce(const std::vector<std::int64_t>& in, std::vector<std::uint32_t>& out) const {
        out.resize(in.size());
        const auto p = static_cast<std::int64_t>(p_);
        for (std::size_t i = 0; i < in.size(); ++i) {
            std::int64_t v = in[i] % p;
            out[i] = static_cast<std::uint32_t>(v < 0 ? v + p : v);
        }
    }

    std::size_t k_;
    MatrixShape rs_, ss_;
    std::uint32_t p_;
    std::vector<std::int64_t> m_, g_;
    std::vector<std::uint32_t> bm_, bg_;
};

std::vector<ExactMatrix> to_matrices(const std::vector<std::int64_t>& flat, std::size_t k, MatrixShape shape) {
    std::vector<ExactMatrix> out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(ExactMatrix::from_integers(
            shape.rows, shape.cols, std::span(flat).subspan(i * shape.size(), shape.size())));
    return out;
}

Counterexample make_counterexample(const Instance& x, std::size_t k, MatrixShape rs, MatrixShape ss,
                                   HypothesisSides exact) {
    Counterexample ce;
    for (std::size_t i = 0; i < k; ++i) {
        ce.r.emplace_back(x.r.begin() + i * rs.size(), x.r.begin() + (i + 1) * rs.size());
        ce.s.emplace_back(x.s.begin() + i * ss.size(), x.s.begin() + (i + 1) * ss.size());
    }
    ce.exact = exact;
    return ce;
}

struct ChunkResult {
    std::uint64_t examined = 0;
    std::uint64_t flagged = 0;
    Ratio max_ratio;
    std::vector<Counterexample> counterexamples;
};

// Digits of `index` in base q fill `out` (least significant first).
void decode(std::uint64_t index, std::uint32_t q, std::vector<std::int64_t>& out) {
    for (auto& v : out) {
        v = static_cast<std::int64_t>(index % q);
        index /= q;
    }
}

// Rows are vec(R_k); true iff this K x e matrix is in reduced row echelon form over F_q.
bool is_rref(const std::vector<std::int64_t>& flat, std::size_t k, std::size_t e) {
    std::size_t prev = 0;
    bool zero_seen = false;
    for (std::size_t row = 0; row < k; ++row) {
        const std::int64_t* x = flat.data() + row * e;
        std::size_t lead = e;
        for (std::size_t c = 0; c < e; ++c)
            if (x[c] != 0) {
                lead = c;
                break;
            }
        if (lead == e) {
            zero_seen = true;
            continue;
        }
        if (zero_seen || x[lead] != 1 || (row > 0 && lead <= prev))
            return false;
        for (std::size_t other = 0; other < k; ++other)
            if (other != row && flat[other * e + lead] != 0)
                return false;
        prev = lead;
    }
    return true;
}

// Returns base^exp, or cap + 1 once the power exceeds cap.
std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i)
        if (__builtin_mul_overflow(acc, base, &acc) || acc > cap)
            return cap + 1;
    return acc;
}

struct Checkpoint {
    std::string signature;
    std::uint64_t last_chunk = 0;
    std::uint64_t examined = 0;
    std::uint64_t flagged = 0;
    Ratio max_ratio;
    std::uint64_t counterexamples = 0;
};

std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        return std::nullopt;
    Checkpoint cp;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "signature")
            std::getline(ls >> std::ws, cp.signature);
        else if (key == "last_chunk")
            ls >> cp.last_chunk;
        else if (key == "examined")
            ls >> cp.examined;
        else if (key == "flagged")
            ls >> cp.flagged;
        else if (key == "counterexamples")
            ls >> cp.counterexamples;
        else if (key == "max_ratio") {
            char slash = 0;
            ls >> cp.max_ratio.num >> slash >> cp.max_ratio.den;
            if (slash != '/' || cp.max_ratio.den == 0)
                throw ParseError("bad max_ratio in checkpoint " + path.string());
        }
        if (!key.empty() && key[0] != '#' && ls.fail())
            throw ParseError("bad checkpoint line: " + line);
    }
    if (cp.signature.empty())
        throw ParseError("checkpoint without signature: " + path.string());
    return cp;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream out(tmp);
        if (!out)
            throw Error("cannot write checkpoint " + tmp.string());
        out << "signature " << cp.signature << "\n"
            << "last_chunk " << cp.last_chunk << "\n"
            << "examined " << cp.examined << "\n"
            << "flagged " << cp.flagged << "\n"
            << "max_ratio " << cp.max_ratio.to_string() << "\n"
            << "counterexamples " << cp.counterexamples << "\n";
    }
    std::filesystem::rename(tmp, path);
}

// Runs chunks [0, chunks) in waves, merging in chunk order.
template <class Fn>
void run_chunks(SearchReport& report, std::uint64_t chunks, const SearchOptions& options,
                const std::string& signature, Fn&& run_chunk) {
    std::uint64_t start = 0;
    if (options.checkpoint) {
        if (auto cp = read_checkpoint(*options.checkpoint)) {
            if (cp->signature != signature)
                throw ContractError("checkpoint " + options.checkpoint->string() + " belongs to a different search");
            start = cp->last_chunk + 1;
            report.examined = cp->examined;
            report.flagged = cp->flagged;
            report.max_ratio = cp->max_ratio;
            report.prior_counterexamples = cp->counterexamples;
            report.resumed_from_chunk = start;
        }
    }
    const unsigned workers = std::max(1u, options.workers);
    const std::uint64_t wave = std::uint64_t{workers} * 4;
    for (std::uint64_t first = start; first < chunks; first += wave) {
        const std::uint64_t count = std::min(wave, chunks - first);
        std::vector<ChunkResult> results(count);
        if (workers == 1) {
            for (std::uint64_t i = 0; i < count; ++i)
                results[i] = run_chunk(first + i);
        } else {
            std::atomic<std::uint64_t> next{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < std::min<std::uint64_t>(workers, count); ++w)
                pool.emplace_back([&] {
                    for (std::uint64_t i; (i = next++) < count;) {
                        try {
                            results[i] = run_chunk(first + i);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure)
                                failure = std::current_exception();
                        }
                    }
                });
            for (auto& t : pool)
                t.join();
            if (failure)
                std::rethrow_exception(failure);
        }
        for (auto& r : results) {
            report.examined += r.examined;
            report.flagged += r.flagged;
            report.max_ratio = std::max(report.max_ratio, r.max_ratio);
            for (auto& ce : r.counterexamples)
                report.counterexamples.push_back(std::move(ce));
        }
        if (options.checkpoint)
            write_checkpoint(*options.checkpoint,
                             {signature, first + count - 1, report.examined, report.flagged, report.max_ratio,
                              report.prior_counterexamples + report.counterexamples.size()});
    }
}

// Shared per-instance work: prescreen, optional exact confirmation.
void examine(const Instance& x, Evaluator& eval, std::size_t k, MatrixShape rs, MatrixShape ss, ChunkResult& out) {
    const HypothesisSides fast = eval.sides(x);
    ++out.examined;
    if (fast.lhs > fast.rhs) {
        ++out.flagged;
        const auto r = to_matrices(x.r, k, rs);
        const auto s = to_matrices(x.s, k, ss);
        const HypothesisSides exact = hypothesis_sides(r, s);
        if (!exact.holds())
            out.counterexamples.push_back(make_counterexample(x, k, rs, ss, exact));
    }
    if (fast.rhs > 0)
        out.max_ratio = std::max(out.max_ratio, Ratio::of(fast.lhs, fast.rhs));
}

std::string shapes_text(MatrixShape a, MatrixShape b) {
    return std::to_string(a.rows) + "x" + std::to_string(a.cols) + "," + std::to_string(b.rows) + "x" +
           std::to_string(b.cols);
}

void check_shapes(std::size_t k, MatrixShape rs, MatrixShape ss) {
    if (k == 0)
        throw ContractError("K must be at least 1");
    if (rs.size() == 0 || ss.size() == 0)
        throw ShapeError("matrix shapes must be nonempty");
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

bool operator<(const Ratio& a, const Ratio& b) {
    return mpz_class(a.num) * b.den < mpz_class(b.num) * a.den;
}

Ratio Ratio::of(std::uint64_t num, std::uint64_t den) {
    if (den == 0)
        throw ContractError("ratio with zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

HypothesisSides hypothesis_sides(std::span<const ExactMatrix> r, std::span<const ExactMatrix> s) {
    check_lists(r, s);
    ExactMatrix sum(r.front().rows() * s.front().rows(), r.front().cols() * s.front().cols());
    for (std::size_t k = 0; k < r.size(); ++k)
        sum += kron(r[k], s[k]);
    const ExactMatrix twisted = block_partial_transpose(sum, s.front().rows(), s.front().cols());
    return {rank_exact(twisted), r.size() * rank_exact(sum)};
}

std::pair<MatrixShape, MatrixShape> parse_shapes(const std::string& text) {
    MatrixShape a, b;
    char x1 = 0, comma = 0, x2 = 0;
    std::istringstream in(text);
    in >> a.rows >> x1 >> a.cols >> comma >> b.rows >> x2 >> b.cols;
    std::string rest;
    if (!in || x1 != 'x' || comma != ',' || x2 != 'x' || (in >> rest) || a.size() == 0 || b.size() == 0)
        throw ParseError("shape must look like m1xn1,m2xn2: '" + text + "'");
    return {a, b};
}

SearchReport exhaustive_search(std::size_t k, MatrixShape rs, MatrixShape ss, std::uint32_t q,
                               const SearchOptions& options) {
    check_shapes(k, rs, ss);
    if (q >= (1u << 31) || !is_prime(q))
        throw ContractError("field size " + std::to_string(q) + " is not a prime below 2^31");
    const auto t0 = Clock::now();
    const std::uint64_t exponent = (rs.size() + ss.size()) * k;
    const std::uint64_t total = checked_power(q, exponent, options.budget);
    if (total > options.budget)
        throw BudgetError("exhaustive search needs " + std::to_string(q) + "^" + std::to_string(exponent) +
                          " instances, budget is " + std::to_string(options.budget));

    const std::uint64_t r_count = checked_power(q, rs.size() * k, options.budget);
    const std::uint64_t s_count = checked_power(q, ss.size() * k, options.budget);
    std::vector<std::uint64_t> r_lists;
    {
        std::vector<std::int64_t> flat(rs.size() * k);
        for (std::uint64_t i = 0; i < r_count; ++i) {
            decode(i, q, flat);
            if (!options.canonicalize || is_rref(flat, k, rs.size()))
                r_lists.push_back(i);
        }
    }

    SearchReport report;
    report.mode = "exhaustive";
    report.k = k;
    report.r_shape = rs;
    report.s_shape = ss;
    report.field = q;
    report.space_size = total;
    const std::uint64_t instances = r_lists.size() * s_count;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_size);
    const std::uint64_t chunks = (instances + chunk - 1) / chunk;
    const std::string signature = "exhaustive K=" + std::to_string(k) + " shape=" + shapes_text(rs, ss) +
                                  " q=" + std::to_string(q) + " canonical=" + std::to_string(options.canonicalize) +
                                  " chunk=" + std::to_string(chunk);

    run_chunks(report, chunks, options, signature, [&](std::uint64_t c) {
        ChunkResult out;
        Evaluator eval(k, rs, ss, q);
        Instance x{std::vector<std::int64_t>(rs.size() * k), std::vector<std::int64_t>(ss.size() * k)};
        const std::uint64_t end = std::min(instances, (c + 1) * chunk);
        for (std::uint64_t idx = c * chunk; idx < end; ++idx) {
            decode(r_lists[idx / s_count], q, x.r);
            decode(idx % s_count, q, x.s);
            examine(x, eval, k, rs, ss, out);
        }
        return out;
    });
    report.wall_seconds = seconds_since(t0);
    return report;
}

SearchReport random_search(std::size_t k, MatrixShape rs, MatrixShape ss, std::int64_t bound,
                           std::uint64_t samples, std::uint64_t seed, const SearchOptions& options) {
    check_shapes(k, rs, ss);
    if (samples == 0)
        throw ContractError("random search needs at least one sample");
    if (bound < 0 || bound > (std::int64_t{1} << 20))
        throw ContractError("entry bound must lie in [0, 2^20]");
    const std::uint32_t p = options.prescreen_prime;
    if (p >= (1u << 31) || !is_prime(p))
        throw ContractError("prescreen modulus must be a prime below 2^31");
    const auto t0 = Clock::now();

    SearchReport report;
    report.mode = "random";
    report.k = k;
    report.r_shape = rs;
    report.s_shape = ss;
    report.field = p;
    report.entry_bound = bound;
    report.seed = seed;
    report.space_size = samples;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_size);
    const std::uint64_t chunks = (samples + chunk - 1) / chunk;
    const std::string signature = "random K=" + std::to_string(k) + " shape=" + shapes_text(rs, ss) +
                                  " bound=" + std::to_string(bound) + " samples=" + std::to_string(samples) +
                                  " seed=" + std::to_string(seed) + " p=" + std::to_string(p) +
                                  " chunk=" + std::to_string(chunk);

    run_chunks(report, chunks, options, signature, [&](std::uint64_t c) {
        ChunkResult out;
        Evaluator eval(k, rs, ss, p);
        Rng rng(mix_seed(seed, c));
        Instance x{std::vector<std::int64_t>(rs.size() * k), std::vector<std::int64_t>(ss.size() * k)};
        const std::uint64_t end = std::min(samples, (c + 1) * chunk);
        for (std::uint64_t idx = c * chunk; idx < end; ++idx) {
            for (auto& v : x.r)
                v = rng.uniform(-bound, bound);
            for (auto& v : x.s)
                v = rng.uniform(-bound, bound);
            examine(x, eval, k, rs, ss, out);
        }
        return out;
    });
    report.wall_seconds = seconds_since(t0);
    return report;
}

namespace {

std::string flat_text(const std::vector<std::vector<std::int64_t>>& blocks) {
    std::string out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i)
            out += ';';
        for (std::size_t j = 0; j < blocks[i].size(); ++j) {
            if (j)
                out += ',';
            out += std::to_string(blocks[i][j]);
        }
    }
    return out;
}

} // namespace

std::string SearchReport::to_text(bool with_timing) const {
    std::ostringstream out;
    out << "mode\t" << mode << "\n"
        << "K\t" << k << "\n"
        << "shape\t" << shapes_text(r_shape, s_shape) << "\n";
    if (mode == "random")
        out << "prescreen_prime\t" << field << "\n"
            << "bound\t" << entry_bound << "\n"
            << "seed\t" << seed << "\n"
            << "samples\t" << space_size << "\n";
    else
        out << "field\t" << field << "\n"
            << "space\t" << space_size << "\n";
    out << "examined\t" << examined << "\n"
        << "flagged\t" << flagged << "\n"
        << "max_ratio\t" << max_ratio.to_string() << "\n"
        << "counterexamples\t" << counterexamples.size() + prior_counterexamples << "\n";
    if (resumed_from_chunk > 0)
        out << "resumed_from_chunk\t" << resumed_from_chunk << "\n";
    for (const auto& ce : counterexamples)
        out << "counterexample\tlhs=" << ce.exact.lhs << "\trhs=" << ce.exact.rhs << "\tR=" << flat_text(ce.r)
            << "\tS=" << flat_text(ce.s) << "\n";
    if (with_timing)
        out << "wall_seconds\t~" << wall_seconds << "\n";
    return out.str();
}

std::string SearchReport::to_json(bool with_timing) const {
    nlohmann::ordered_json j;
    j["mode"] = mode;
    j["K"] = k;
    j["shape"] = shapes_text(r_shape, s_shape);
    if (mode == "random") {
        j["prescreen_prime"] = field;
        j["bound"] = entry_bound;
        j["seed"] = seed;
        j["samples"] = space_size;
    } else {
        j["field"] = field;
        j["space"] = space_size;
    }
    j["examined"] = examined;
    j["flagged"] = flagged;
    j["max_ratio"] = max_ratio.to_string();
    j["resumed_from_chunk"] = resumed_from_chunk;
    j["prior_counterexamples"] = prior_counterexamples;
    auto& list = j["counterexamples"] = nlohmann::ordered_json::array();
    for (const auto& ce : counterexamples)
        list.push_back({{"lhs", ce.exact.lhs}, {"rhs", ce.exact.rhs}, {"R", ce.r}, {"S", ce.s}});
    if (with_timing)
        j["wall_seconds"] = wall_seconds;
    return j.dump(2) + "\n";
}

BridgeVerdict bridge_check(std::span<const ExactMatrix> r, std::span<const ExactMatrix> s) {
    check_lists(r, s);
    BridgeVerdict v;
    v.sides = hypothesis_sides(r, s);
    const PureState psi = state_from_operator_pairs(r, s);
    v.r_ab = schmidt_rank(psi, PartySet::of({0, 1}));
    v.r_ac = schmidt_rank(psi, PartySet::of({0, 2}));
    v.r_ad = schmidt_rank(psi, PartySet::of({0, 3}));
    v.identities_hold = v.r_ac * r.size() == v.sides.rhs && v.r_ad == v.sides.lhs && v.r_ab <= r.size();
    v.state_form_holds = v.r_ad <= v.r_ab * v.r_ac;
    return v;
}

} // namespace ranklab
