#include <benchmark/benchmark.h>

#include "tagmux/experiment.hpp"
#include "tagmux/multiplex.hpp"
#include "tagmux/tagset.hpp"
#include "tagmux/tokens.hpp"

using namespace tagmux;

namespace {

DnaSeq random_sequence(std::uint64_t seed, int len) {
    auto rng = seeded_rng({seed});
    std::vector<Base> bases(static_cast<std::size_t>(len));
    for (Base& b : bases) b = static_cast<Base>(rng() & 3);
    return DnaSeq::from_bases(bases);
}

std::vector<DnaSeq> bench_tags(int count) {
    TagSetConfig cfg;
    cfg.c = 8;
    cfg.length = 9;
    cfg.enforce_c3 = false;
    cfg.max_tags = static_cast<std::size_t>(count);
    return generate_tags(cfg).tags;
}

void BM_ExtractTokens(benchmark::State& state) {
    const DnaSeq s = random_sequence(1, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(extract_tokens(s, 8));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExtractTokens)->Arg(100)->Arg(1000);

void BM_GreedyGenerate(benchmark::State& state) {
    TagSetConfig cfg;
    cfg.c = static_cast<int>(state.range(0));
    cfg.length = 20;
    cfg.enforce_c3 = true;
    for (auto _ : state) {
        const GenerationResult r = generate_tags(cfg);
        benchmark::DoNotOptimize(r.tags.size());
    }
}
BENCHMARK(BM_GreedyGenerate)->Arg(8)->Arg(9);

void BM_BuildGraph(benchmark::State& state) {
    auto rng = seeded_rng({3});
    const std::vector<Pool> pools =
        random_pools(static_cast<int>(state.range(0)), 5, 20, rng);
    const std::vector<DnaSeq> tags = bench_tags(500);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_hybridization_graph(pools, tags, 7));
}
BENCHMARK(BM_BuildGraph)->Arg(200)->Arg(1000);

void BM_Schedule(benchmark::State& state) {
    auto rng = seeded_rng({4});
    const std::vector<Pool> pools =
        random_pools(static_cast<int>(state.range(0)), 5, 20, rng);
    const std::vector<DnaSeq> tags = bench_tags(500);
    const HybGraph g = build_hybridization_graph(pools, tags, 7);
    for (auto _ : state) {
        const ScheduleResult r = schedule(g, Variant::PrimerDelPlus);
        benchmark::DoNotOptimize(r.arrays_used);
    }
}
BENCHMARK(BM_Schedule)->Arg(200)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
