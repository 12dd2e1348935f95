#include <benchmark/benchmark.h>

#include "srlnc/intercept_chain.hpp"
#include "srlnc/mc_sim.hpp"
#include "srlnc/rank_stat.hpp"
#include "srlnc/sparse_code.hpp"

using namespace srlnc;

static void BM_Absorb(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const auto q = static_cast<unsigned>(state.range(1));
    Rng rng(1);
    std::vector<CodingVector> pool;
    for (int i = 0; i < 4 * K; ++i) pool.push_back(sample_coding_vector(K, q, 0.7, rng));
    for (auto _ : state) {
        DecoderState d(K, q);
        for (const auto& v : pool) {
            if (d.decoded()) break;
            d.absorb(v);
        }
        benchmark::DoNotOptimize(d.rank());
    }
}
BENCHMARK(BM_Absorb)->Args({20, 2})->Args({20, 16})->Args({100, 2})->Args({100, 256});

static void BM_RankTables(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(RankTables(K, 2, 0.7, 2 * K).innovation().back());
}
BENCHMARK(BM_RankTables)->Arg(20)->Arg(60);

static void BM_BuildChain(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const CodeParams code{K, 2, 0.7, 2 * K};
    const RankTables tables(K, 2, 0.7, 2 * K);
    for (auto _ : state) {
        auto P = build_chain(code, {0.05, 0.3, 0.9}, tables);
        benchmark::DoNotOptimize(P.size());
    }
}
BENCHMARK(BM_BuildChain)->Arg(20)->Arg(60);

static void BM_Propagate(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    const CodeParams code{K, 2, 0.7, 2 * K};
    const RankTables tables(K, 2, 0.7, 2 * K);
    const auto P = build_chain(code, {0.05, 0.3, 0.9}, tables);
    for (auto _ : state) benchmark::DoNotOptimize(intercept_probability(P, 2 * K));
}
BENCHMARK(BM_Propagate)->Arg(20)->Arg(60);

static void BM_Trial(benchmark::State& state) {
    SimConfig cfg;
    cfg.code = {20, static_cast<unsigned>(state.range(0)), 0.7, 40};
    cfg.chan = {0.01, 0.26, 0.9};
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(cfg, i++));
}
BENCHMARK(BM_Trial)->Arg(2)->Arg(16);

BENCHMARK_MAIN();
