#include "bittp/moea.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "bittp/errors.hpp"

namespace bittp {

namespace {

// ceil(frac * count) robust against FP noise like 0.1 * 50 = 5.000000000000001.
std::size_t ceil_fraction(double frac, long long count) {
    double x = frac * static_cast<double>(count);
    return static_cast<std::size_t>(std::llround(std::ceil(x - 1e-9)));
}

template <typename F>
void parallel_for(std::size_t count, int workers, F&& fn) {
    int usable = std::min<long long>(workers, static_cast<long long>(count));
    if (usable <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(usable));
    for (int w = 0; w < usable; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = static_cast<std::size_t>(w); i < count;
                     i += static_cast<std::size_t>(usable))
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<Evaluation> collect_evals(const std::vector<Individual>& members) {
    std::vector<Evaluation> evals;
    evals.reserve(members.size());
    for (const auto& ind : members) evals.push_back(ind.eval);
    return evals;
}

Bounds objective_extremes(std::span<const Evaluation> evals) {
    Bounds b;
    if (evals.empty()) return b;
    b.time_min = b.time_max = evals[0].time;
    b.profit_min = b.profit_max = static_cast<double>(evals[0].profit);
    for (const auto& e : evals) {
        b.time_min = std::min(b.time_min, e.time);
        b.time_max = std::max(b.time_max, e.time);
        b.profit_min = std::min(b.profit_min, static_cast<double>(e.profit));
        b.profit_max = std::max(b.profit_max, static_cast<double>(e.profit));
    }
    return b;
}

void assign_rank_and_crowding(std::vector<Individual>& members) {
    std::vector<Evaluation> evals = collect_evals(members);
    Bounds bounds = objective_extremes(evals);
    auto fronts = nondominated_sort(evals);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        std::vector<Evaluation> front_evals;
        front_evals.reserve(fronts[f].size());
        for (int i : fronts[f]) front_evals.push_back(evals[static_cast<std::size_t>(i)]);
        std::vector<double> crowd = crowding_distance(front_evals, bounds);
        for (std::size_t k = 0; k < fronts[f].size(); ++k) {
            auto& ind = members[static_cast<std::size_t>(fronts[f][k])];
            ind.rank = static_cast<int>(f);
            ind.crowding = crowd[k];
        }
    }
}

// Selection order: rank ascending, crowding descending, then a uniform random
// tie-break drawn per member in index order (exactly members.size() draws),
// index as the final fallback. Assumes assign_rank_and_crowding ran.
std::vector<int> ranked_order(const std::vector<Individual>& members, Rng& rng) {
    std::vector<double> tie(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) tie[i] = rng.uniform();
    std::vector<int> order(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto& ia = members[static_cast<std::size_t>(a)];
        const auto& ib = members[static_cast<std::size_t>(b)];
        if (ia.rank != ib.rank) return ia.rank < ib.rank;
        if (ia.crowding != ib.crowding) return ia.crowding > ib.crowding;
        if (tie[static_cast<std::size_t>(a)] != tie[static_cast<std::size_t>(b)])
            return tie[static_cast<std::size_t>(a)] < tie[static_cast<std::size_t>(b)];
        return a < b;
    });
    return order;
}

struct SeedContext {
    Tour tour_a;              // heuristic tour
    Tour tour_b;              // its reversed traversal
    std::vector<int> picks;   // knapsack-solution items, descending ratio
};

SeedContext make_seed_context(const Instance& inst, const SubsolverConfig& sub) {
    SeedContext ctx;
    ctx.tour_a = solve_tsp(inst, sub);
    ctx.tour_b = symmetric_tour(ctx.tour_a);
    PackingPlan kp = solve_kp_ghdp(inst, sub);
    for (int j : items_by_ratio(inst))
        if (kp[static_cast<std::size_t>(j)]) ctx.picks.push_back(j);
    return ctx;
}

// Walk the seed pool in index order (0: heuristic tour + empty plan,
// 1: reversed tour + empty plan, 2+j: plan grown by the j-th pick, paired
// with whichever tour is not dominated for that plan) and emit the requested
// entries. Lets initialization materialize only the sampled genotypes.
template <typename Emit>
void sweep_seed_pool(const Instance& inst, const SeedContext& ctx, const std::vector<char>* wanted,
                     Emit&& emit) {
    PackingPlan plan(static_cast<std::size_t>(inst.num_items()), 0);
    auto want = [&](std::size_t idx) { return wanted == nullptr || (*wanted)[idx]; };
    if (want(0)) emit(0, ctx.tour_a, plan);
    if (want(1)) emit(1, ctx.tour_b, plan);
    for (std::size_t j = 0; j < ctx.picks.size(); ++j) {
        plan[static_cast<std::size_t>(ctx.picks[j])] = 1;
        if (!want(2 + j)) continue;
        Evaluation ea = evaluate(inst, ctx.tour_a, plan);
        Evaluation eb = evaluate(inst, ctx.tour_b, plan);
        emit(2 + j, dominates(eb, ea) ? ctx.tour_b : ctx.tour_a, plan);
    }
}

}  // namespace

void validate(const GaConfig& cfg) {
    if (cfg.population_size < 2) throw std::invalid_argument("population size must be >= 2");
    if (cfg.elite_count < 1) throw std::invalid_argument("elite count must be >= 1");
    if (cfg.mutant_count < 0) throw std::invalid_argument("mutant count must be >= 0");
    if (cfg.elite_count + cfg.mutant_count >= cfg.population_size)
        throw std::invalid_argument("elite count + mutant count must be below population size");
    if (!(cfg.elite_bias >= 0.5 && cfg.elite_bias < 1.0))
        throw std::invalid_argument("elite bias must lie in [0.5, 1)");
    if (!(cfg.seeded_fraction >= 0.0 && cfg.seeded_fraction <= 1.0))
        throw std::invalid_argument("seeded fraction must lie in [0, 1]");
    if (cfg.exploit_period < 1) throw std::invalid_argument("exploit period must be >= 1");
    if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

std::vector<std::vector<int>> nondominated_sort(std::span<const Evaluation> evals) {
    const int n = static_cast<int>(evals.size());
    std::vector<std::vector<int>> dominated(static_cast<std::size_t>(n));
    std::vector<int> blockers(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (dominates(evals[static_cast<std::size_t>(i)], evals[static_cast<std::size_t>(j)])) {
                dominated[static_cast<std::size_t>(i)].push_back(j);
                ++blockers[static_cast<std::size_t>(j)];
            } else if (dominates(evals[static_cast<std::size_t>(j)],
                                 evals[static_cast<std::size_t>(i)])) {
                dominated[static_cast<std::size_t>(j)].push_back(i);
                ++blockers[static_cast<std::size_t>(i)];
            }
        }
    }
    std::vector<std::vector<int>> fronts;
    std::vector<int> current;
    for (int i = 0; i < n; ++i)
        if (blockers[static_cast<std::size_t>(i)] == 0) current.push_back(i);
    while (!current.empty()) {
        std::vector<int> next;
        for (int i : current)
            for (int j : dominated[static_cast<std::size_t>(i)])
                if (--blockers[static_cast<std::size_t>(j)] == 0) next.push_back(j);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(std::span<const Evaluation> front, const Bounds& bounds) {
    const std::size_t k = front.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    if (k <= 2) return std::vector<double>(k, kInf);

    std::vector<double> dist(k, 0.0);
    auto accumulate = [&](auto value, double lo, double hi) {
        std::vector<int> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            double va = value(a), vb = value(b);
            if (va != vb) return va < vb;
            return a < b;
        });
        dist[static_cast<std::size_t>(idx.front())] = kInf;
        dist[static_cast<std::size_t>(idx.back())] = kInf;
        double span = hi - lo;
        if (span <= 0) return;  // degenerate bound: this objective contributes 0
        for (std::size_t i = 1; i + 1 < k; ++i) {
            auto at = static_cast<std::size_t>(idx[i]);
            if (dist[at] == kInf) continue;
            dist[at] += (value(idx[i + 1]) - value(idx[i - 1])) / span;
        }
    };
    accumulate([&](int i) { return front[static_cast<std::size_t>(i)].time; }, bounds.time_min,
               bounds.time_max);
    accumulate([&](int i) { return static_cast<double>(front[static_cast<std::size_t>(i)].profit); },
               bounds.profit_min, bounds.profit_max);
    return dist;
}

std::pair<std::vector<int>, std::vector<int>> elite_split(Population& pop, int n_elite,
                                                          Rng& rng) {
    const int n = static_cast<int>(pop.members.size());
    if (n_elite < 1 || n_elite >= n)
        throw std::invalid_argument("elite count must lie in [1, population size)");
    assign_rank_and_crowding(pop.members);
    std::vector<int> order = ranked_order(pop.members, rng);
    std::vector<int> elite(order.begin(), order.begin() + n_elite);
    std::vector<int> rest(order.begin() + n_elite, order.end());
    return {std::move(elite), std::move(rest)};
}

Genotype biased_crossover(const Genotype& elite_parent, const Genotype& other_parent,
                          double elite_bias, Rng& rng) {
    if (elite_parent.size() != other_parent.size())
        throw ContractError("biased_crossover: parent length mismatch");
    Genotype child(elite_parent.size());
    for (std::size_t i = 0; i < child.size(); ++i)
        child[i] = rng.uniform() <= elite_bias ? elite_parent[i] : other_parent[i];
    return child;
}

Genotype make_mutant(std::size_t length, Rng& rng) {
    Genotype g(length);
    for (auto& key : g) key = rng.uniform();
    return g;
}

std::vector<Genotype> initial_seed_pool(const Instance& inst, const SubsolverConfig& sub) {
    SeedContext ctx = make_seed_context(inst, sub);
    std::vector<Genotype> pool;
    pool.reserve(ctx.picks.size() + 2);
    sweep_seed_pool(inst, ctx, nullptr,
                    [&](std::size_t, const Tour& tour, const PackingPlan& plan) {
                        pool.push_back(encode(inst, tour, plan));
                    });
    return pool;
}

Population initialize(const Instance& inst, const GaConfig& cfg, const SubsolverConfig& sub,
                      Rng& rng) {
    validate(cfg);
    validate(sub, inst);

    const std::size_t len = genotype_length(inst);
    const std::size_t n_pop = static_cast<std::size_t>(cfg.population_size);
    std::size_t want = ceil_fraction(cfg.seeded_fraction, cfg.population_size);

    Population pop;
    pop.members.reserve(n_pop);

    // Draw order: seed-pool sampling first, then every mutant's keys.
    if (want > 0) {
        SeedContext ctx = make_seed_context(inst, sub);
        const std::size_t pool_size = ctx.picks.size() + 2;
        want = std::min(want, pool_size);
        std::vector<std::size_t> sampled = sample_without_replacement(pool_size, want, rng);
        std::sort(sampled.begin(), sampled.end());
        std::vector<char> wanted(pool_size, 0);
        for (std::size_t idx : sampled) wanted[idx] = 1;
        sweep_seed_pool(inst, ctx, &wanted,
                        [&](std::size_t, const Tour& tour, const PackingPlan& plan) {
                            Individual ind;
                            ind.genotype = encode(inst, tour, plan);
                            pop.members.push_back(std::move(ind));
                        });
    }
    while (pop.members.size() < n_pop) {
        Individual ind;
        ind.genotype = make_mutant(len, rng);
        pop.members.push_back(std::move(ind));
    }

    parallel_for(pop.members.size(), cfg.workers, [&](std::size_t i) {
        auto& ind = pop.members[i];
        ind.phenotype = repair_in_place(inst, ind.genotype);
        ind.eval = evaluate(inst, ind.phenotype.tour, ind.phenotype.plan);
    });
    pop.generation = 0;
    return pop;
}

void exploit(const Instance& inst, std::vector<Individual>& elites, int n_elite, Rng& rng) {
    if (elites.size() != static_cast<std::size_t>(n_elite))
        throw ContractError("exploit: elite set size must equal the elite count");
    const int n = inst.num_cities();
    const int m = inst.num_items();
    const long long ls_tour = std::min<long long>(100, static_cast<long long>(n) * n);
    const long long ls_plan = std::min<long long>(100, m);

    auto dominated_by_any = [&](const Evaluation& e) {
        for (const auto& member : elites)
            if (dominates(member.eval, e)) return true;
        return false;
    };

    std::vector<std::size_t> sampled =
        sample_without_replacement(static_cast<std::size_t>(n_elite),
                                   ceil_fraction(0.1, n_elite), rng);
    for (std::size_t s : sampled) {
        Phenotype cur = elites[s].phenotype;
        Evaluation cur_eval = elites[s].eval;

        // Phase 1: random segment reversals, accepted unless the incumbent
        // dominates the move (sideways moves pass).
        for (long long it = 0; it < ls_tour; ++it) {
            std::size_t a = 1 + rng.uniform_int(static_cast<std::size_t>(n - 1));
            std::size_t b = 1 + rng.uniform_int(static_cast<std::size_t>(n - 1));
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            Tour cand = cur.tour;
            std::reverse(cand.begin() + static_cast<std::ptrdiff_t>(a),
                         cand.begin() + static_cast<std::ptrdiff_t>(b) + 1);
            Evaluation cand_eval = evaluate(inst, cand, cur.plan);
            if (!dominates(cur_eval, cand_eval)) {
                cur.tour = std::move(cand);
                cur_eval = cand_eval;
            }
        }
        if (!dominated_by_any(cur_eval))
            elites.push_back(Individual{encode(inst, cur.tour, cur.plan), cur, cur_eval});

        // Phase 2: single-item flips against the fixed working pair; flips
        // that would overload the knapsack are skipped outright.
        const long long base_weight = plan_weight(inst, cur.plan);
        for (long long it = 0; it < ls_plan; ++it) {
            auto j = rng.uniform_int(static_cast<std::size_t>(m));
            bool adding = !cur.plan[j];
            if (adding && base_weight + inst.item(static_cast<int>(j)).weight > inst.capacity())
                continue;
            PackingPlan flipped = cur.plan;
            flipped[j] = flipped[j] ? 0 : 1;
            Evaluation flip_eval = evaluate(inst, cur.tour, flipped);
            if (!dominated_by_any(flip_eval))
                elites.push_back(
                    Individual{encode(inst, cur.tour, flipped), {cur.tour, flipped}, flip_eval});
        }
    }

    if (elites.size() > static_cast<std::size_t>(n_elite)) {
        assign_rank_and_crowding(elites);
        std::vector<int> order = ranked_order(elites, rng);
        std::vector<Individual> kept;
        kept.reserve(static_cast<std::size_t>(n_elite));
        for (int i = 0; i < n_elite; ++i)
            kept.push_back(std::move(elites[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]));
        elites = std::move(kept);
    }
}

Population survive(const Instance& inst, const Population& pop, const GaConfig& cfg, Rng& rng,
                   bool exploit_now) {
    validate(cfg);
    if (pop.members.size() != static_cast<std::size_t>(cfg.population_size))
        throw ContractError("survive: population size does not match the config");

    // Draw order per generation: elite-split tie-breaks, exploitation (when
    // scheduled), mutant keys, then per-offspring parent picks and key coins.
    Population work = pop;  // elite_split assigns rank/crowding on a copy
    auto [elite_idx, rest_idx] = elite_split(work, cfg.elite_count, rng);
    (void)rest_idx;

    std::vector<Individual> elites;
    elites.reserve(static_cast<std::size_t>(cfg.elite_count));
    for (int i : elite_idx) elites.push_back(work.members[static_cast<std::size_t>(i)]);
    if (exploit_now) exploit(inst, elites, cfg.elite_count, rng);

    const std::size_t n_offspring = static_cast<std::size_t>(cfg.population_size) -
                                    static_cast<std::size_t>(cfg.elite_count) -
                                    static_cast<std::size_t>(cfg.mutant_count);
    std::vector<Genotype> fresh;
    fresh.reserve(static_cast<std::size_t>(cfg.mutant_count) + n_offspring);
    const std::size_t len = genotype_length(inst);
    for (int i = 0; i < cfg.mutant_count; ++i) fresh.push_back(make_mutant(len, rng));
    for (std::size_t i = 0; i < n_offspring; ++i) {
        const Genotype& a = elites[rng.uniform_int(elites.size())].genotype;
        const Genotype& b = work.members[rng.uniform_int(work.members.size())].genotype;
        fresh.push_back(biased_crossover(a, b, cfg.elite_bias, rng));
    }

    Population next;
    next.generation = pop.generation + 1;
    next.members = std::move(elites);
    next.members.reserve(static_cast<std::size_t>(cfg.population_size));
    const std::size_t fresh_base = next.members.size();
    for (auto& g : fresh) next.members.push_back(Individual{std::move(g), {}, {}, 0, 0.0});

    parallel_for(fresh.size(), cfg.workers, [&](std::size_t i) {
        auto& ind = next.members[fresh_base + i];
        ind.phenotype = repair_in_place(inst, ind.genotype);
        ind.eval = evaluate(inst, ind.phenotype.tour, ind.phenotype.plan);
    });
    return next;
}

FrontArchive run(const Instance& inst, const GaConfig& cfg, const SubsolverConfig& sub,
                 const GenerationCallback& on_generation) {
    validate(cfg);
    if (!cfg.max_generations && !cfg.time_limit_s)
        throw std::invalid_argument("run needs a generation limit and/or a time limit");

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_s = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    Rng rng(cfg.seed);
    Population pop = initialize(inst, cfg, sub, rng);
    while (true) {
        std::vector<Evaluation> evals = collect_evals(pop.members);
        double now = elapsed_s();
        if (on_generation) {
            FrontArchive snapshot = pareto_filter(evals);
            std::vector<Evaluation> front;
            front.reserve(snapshot.size());
            for (const auto& p : snapshot.points) front.push_back(p.eval);
            on_generation(GenerationStats{pop.generation, now, front});
        }
        bool stop = (cfg.max_generations && pop.generation >= *cfg.max_generations) ||
                    (cfg.time_limit_s && now >= *cfg.time_limit_s);
        if (stop) break;
        pop = survive(inst, pop, cfg, rng, pop.generation % cfg.exploit_period == 0);
    }

    std::vector<Evaluation> evals = collect_evals(pop.members);
    std::vector<Phenotype> phenotypes;
    phenotypes.reserve(pop.members.size());
    for (const auto& ind : pop.members) phenotypes.push_back(ind.phenotype);
    return make_front(evals, phenotypes);
}

}  // namespace bittp
