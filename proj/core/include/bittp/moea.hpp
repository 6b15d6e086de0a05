#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bittp/encoding.hpp"
#include "bittp/metrics.hpp"
#include "bittp/rng.hpp"
#include "bittp/subsolvers.hpp"

namespace bittp {

/// Parameters of the evolutionary loop. Defaults are the recommended
/// configuration (N=500, Ne=0.5N, Nm=0.1N, rho_e=0.7, alpha=0.2, omega=50).
struct GaConfig {
    int population_size = 500;   ///< N
    int elite_count = 250;       ///< Ne, elites carried over each generation
    int mutant_count = 50;       ///< Nm, fresh random genotypes per generation
    double elite_bias = 0.7;     ///< rho_e, per-key probability of the elite parent
    double seeded_fraction = 0.2;  ///< alpha, share of the start population from the seed pool
    int exploit_period = 50;     ///< omega, generations between local-search phases
    std::uint64_t seed = 0;
    std::optional<long long> max_generations;  ///< stop after this many generations
    std::optional<double> time_limit_s;        ///< stop once wall clock exceeds this
    int workers = 1;  ///< threads for decode/repair/evaluate (never for RNG draws)
};

/// Throws std::invalid_argument unless N >= 2, 1 <= Ne, 0 <= Nm, Ne + Nm < N,
/// rho_e in [0.5, 1), alpha in [0, 1], omega >= 1 and workers >= 1.
void validate(const GaConfig& cfg);

struct Individual {
    Genotype genotype;
    Phenotype phenotype;
    Evaluation eval;
    int rank = 0;           // front index from the last non-dominated sort
    double crowding = 0.0;  // crowding distance within that front
};

struct Population {
    std::vector<Individual> members;
    long long generation = 0;
};

/// Fast non-dominated sort: partitions indices into fronts F1, F2, ... where
/// F1 is the non-dominated subset, F2 is non-dominated once F1 is removed,
/// and so on. Duplicate objective vectors share a front.
std::vector<std::vector<int>> nondominated_sort(std::span<const Evaluation> evals);

/// Standard two-objective crowding distance of each member of one front,
/// normalized by the given bounds (a degenerate bound contributes zero).
/// Fronts of one or two points get +inf everywhere; boundary points get +inf.
std::vector<double> crowding_distance(std::span<const Evaluation> front, const Bounds& bounds);

/// Rank the population by (front, crowding) and split off the first n_elite
/// members. Ties inside equal (rank, crowding) order randomly — one uniform
/// draw per member, in index order. Assigns rank/crowding on the members.
/// Returns (elite indices, remainder indices) in selection order.
std::pair<std::vector<int>, std::vector<int>> elite_split(Population& pop, int n_elite,
                                                          Rng& rng);

/// Parameterized uniform crossover: each key comes from the elite parent with
/// probability rho_e, from the other parent otherwise. One draw per key.
Genotype biased_crossover(const Genotype& elite_parent, const Genotype& other_parent,
                          double elite_bias, Rng& rng);

/// A fresh uniform-random genotype of the given length.
Genotype make_mutant(std::size_t length, Rng& rng);

/// The full seed pool of the initialization procedure: genotypes for the
/// heuristic tour and its reverse with the empty plan, plus one entry per
/// knapsack-solution item (added in descending profit/weight ratio, each
/// snapshot encoded with whichever of the two tours is not dominated for that
/// partial plan). Materializes |pool| genotypes — intended for tests and
/// diagnostics; the solver itself only materializes the sampled members.
std::vector<Genotype> initial_seed_pool(const Instance& inst, const SubsolverConfig& sub);

/// Start population: ceil(alpha*N) members sampled without replacement from
/// the seed pool (all of it if the pool is smaller), the rest uniform-random
/// mutants; everything repaired and evaluated.
Population initialize(const Instance& inst, const GaConfig& cfg, const SubsolverConfig& sub,
                      Rng& rng);

/// One local-search exploitation phase over the elite set: ceil(0.1*Ne)
/// sampled elites each undergo min(100, n^2) random 2-opt moves (a move is
/// kept unless the incumbent dominates it) followed by min(100, m) random
/// single-item flips against the resulting pair (flips that would exceed
/// capacity are skipped). The 2-opt survivor and every non-dominated flip
/// result are inserted (re-encoded) unless some current elite dominates them;
/// afterwards the set is truncated back to n_elite by rank/crowding with
/// random tie-breaks. elites.size() must equal n_elite on entry.
void exploit(const Instance& inst, std::vector<Individual>& elites, int n_elite, Rng& rng);

/// One generation: split off Ne elites (optionally running exploit on them),
/// then refill with Nm mutants and N - Ne - Nm biased-crossover offspring
/// (elite parent from the post-exploit elite set, other parent from the whole
/// generation-start population), repairing and evaluating all new members.
Population survive(const Instance& inst, const Population& pop, const GaConfig& cfg, Rng& rng,
                   bool exploit_now = false);

/// Per-generation snapshot handed to the callback: the current population's
/// non-dominated objective vectors (deduplicated, ascending time).
struct GenerationStats {
    long long generation = 0;
    double elapsed_s = 0.0;
    std::span<const Evaluation> front;
};

using GenerationCallback = std::function<void(const GenerationStats&)>;

/// Full run: initialize, then iterate survive() — exploitation every omega
/// generations, generation 0 included — until a stop condition trips. The
/// callback fires once per generation (including generation 0 and the final
/// one). Returns the final population's non-dominated front with all
/// attaining phenotypes. Identical (instance, config) pairs give identical
/// results; a generation limit makes that bit-exact since wall clock then
/// never influences the trajectory.
FrontArchive run(const Instance& inst, const GaConfig& cfg, const SubsolverConfig& sub,
                 const GenerationCallback& on_generation = {});

}  // namespace bittp
