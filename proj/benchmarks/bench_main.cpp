#include "ranklab/cone.hpp"
#include "ranklab/exact_matrix.hpp"
#include "ranklab/hypothesis.hpp"
#include "ranklab/inequality.hpp"
#include "ranklab/prime_field.hpp"
#include "ranklab/rank_vector.hpp"
#include "ranklab/rng.hpp"
#include "ranklab/states.hpp"

#include <benchmark/benchmark.h>

using namespace ranklab;

namespace {

std::vector<std::int64_t> random_entries(std::size_t count, std::int64_t bound, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::int64_t> v(count);
    for (auto& x : v)
        x = rng.uniform(-bound, bound);
    return v;
}

void BM_RankExact(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = ExactMatrix::from_integers(n, n, random_entries(n * n, 3, 7));
    for (auto _ : state)
        benchmark::DoNotOptimize(rank_exact(m));
}
BENCHMARK(BM_RankExact)->Arg(9)->Arg(27)->Arg(81);

void BM_RankExactComplex(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto re = random_entries(n * n, 3, 11), im = random_entries(n * n, 3, 12);
    std::vector<GaussianRational> entries;
    for (std::size_t i = 0; i < n * n; ++i)
        entries.emplace_back(mpq_class(re[i]), mpq_class(im[i]));
    const ExactMatrix m(n, n, std::move(entries));
    for (auto _ : state)
        benchmark::DoNotOptimize(rank_exact(m));
}
BENCHMARK(BM_RankExactComplex)->Arg(9)->Arg(27);

void BM_RankModP(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto m = PrimeFieldMatrix::from_integers(n, n, random_entries(n * n, 3, 7), kDefaultPrime);
    for (auto _ : state)
        benchmark::DoNotOptimize(rank_mod_p(m));
}
BENCHMARK(BM_RankModP)->Arg(9)->Arg(27)->Arg(81);

void BM_RankVectorRandom(benchmark::State& state) {
    const std::vector<std::size_t> dims(4, static_cast<std::size_t>(state.range(0)));
    const PureState psi = random_state(dims, 2, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(rank_vector(psi));
}
BENCHMARK(BM_RankVectorRandom)->Arg(2)->Arg(3);

void BM_RankVectorPsi6(benchmark::State& state) {
    const PureState psi = named_state("psi6", static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(rank_vector(psi));
}
BENCHMARK(BM_RankVectorPsi6)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ExtremeRaysKnownSet(benchmark::State& state) {
    std::vector<IntVector> rows;
    for (const auto& ineq : known_set(4)) {
        IntVector row;
        for (auto c : ineq.coeffs)
            row.emplace_back(static_cast<long>(c));
        rows.push_back(std::move(row));
    }
    const HRep h(7, rows);
    DDOptions options;
    options.adjacency = state.range(0) ? AdjacencyTest::algebraic : AdjacencyTest::combinatorial;
    for (auto _ : state)
        benchmark::DoNotOptimize(extreme_rays(h, options));
}
BENCHMARK(BM_ExtremeRaysKnownSet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveK2(benchmark::State& state) {
    SearchOptions options;
    options.canonicalize = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(exhaustive_search(2, {2, 2}, {2, 2}, 2, options));
}
BENCHMARK(BM_ExhaustiveK2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RandomSearchChunk(benchmark::State& state) {
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(random_search(k, {3, 3}, {3, 3}, 3, 4096, 1));
}
BENCHMARK(BM_RandomSearchChunk)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
