// Microbenchmarks for the hot paths of the solver: objective evaluation,
// decode + repair of random keys, non-dominated sorting, hypervolume, and a
// full generation step on the bundled 280-city instance.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bittp/encoding.hpp"
#include "bittp/instance.hpp"
#include "bittp/metrics.hpp"
#include "bittp/model.hpp"
#include "bittp/moea.hpp"
#include "bittp/rng.hpp"
#include "bittp/subsolvers.hpp"

namespace {

const bittp::Instance& big_instance() {
    static bittp::Instance inst = bittp::parse_instance_file(BITTP_DATA_DIR "/a280_n279.ttp");
    return inst;
}

bittp::Genotype random_genotype(const bittp::Instance& inst, std::mt19937_64& gen) {
    bittp::Genotype g(bittp::genotype_length(inst));
    for (double& k : g) k = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return g;
}

void bm_evaluate(benchmark::State& state) {
    const bittp::Instance& inst = big_instance();
    std::mt19937_64 gen(1);
    bittp::Phenotype ph = bittp::decode(inst, bittp::repair(inst, random_genotype(inst, gen)));
    for (auto _ : state)
        benchmark::DoNotOptimize(bittp::evaluate(inst, ph.tour, ph.plan));
}
BENCHMARK(bm_evaluate);

void bm_decode_repair(benchmark::State& state) {
    const bittp::Instance& inst = big_instance();
    std::mt19937_64 gen(2);
    std::vector<bittp::Genotype> inputs;
    for (int i = 0; i < 64; ++i) inputs.push_back(random_genotype(inst, gen));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bittp::decode(inst, bittp::repair(inst, inputs[i])));
        i = (i + 1) % inputs.size();
    }
}
BENCHMARK(bm_decode_repair);

void bm_nondominated_sort(benchmark::State& state) {
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> coord(0, 10'000);
    std::vector<bittp::Evaluation> evals(static_cast<std::size_t>(state.range(0)));
    for (auto& e : evals) {
        e.time = static_cast<double>(coord(gen));
        e.profit = coord(gen);
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(bittp::nondominated_sort(evals));
}
BENCHMARK(bm_nondominated_sort)->Arg(100)->Arg(500);

void bm_hypervolume(benchmark::State& state) {
    std::mt19937_64 gen(4);
    std::uniform_int_distribution<int> coord(0, 1'000'000);
    std::vector<bittp::Evaluation> evals(1000);
    for (auto& e : evals) {
        e.time = static_cast<double>(coord(gen));
        e.profit = coord(gen);
    }
    bittp::FrontArchive front = bittp::pareto_filter(evals);
    for (auto _ : state)
        benchmark::DoNotOptimize(bittp::hypervolume(front));
}
BENCHMARK(bm_hypervolume);

void bm_generation(benchmark::State& state) {
    const bittp::Instance& inst = big_instance();
    bittp::GaConfig cfg;
    cfg.population_size = 100;
    cfg.elite_count = 50;
    cfg.mutant_count = 10;
    cfg.seed = 5;
    bittp::SubsolverConfig sub;
    sub.tsp_budget_s = 0.01;
    bittp::Rng rng(cfg.seed);
    bittp::Population pop = bittp::initialize(inst, cfg, sub, rng);
    for (auto _ : state) {
        pop = bittp::survive(inst, pop, cfg, rng);
        benchmark::DoNotOptimize(pop.members.size());
    }
}
BENCHMARK(bm_generation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
