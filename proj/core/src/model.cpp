#include "bittp/model.hpp"

#include <algorithm>

#include "bittp/errors.hpp"

namespace bittp {

bool is_valid_tour(const Instance& inst, const Tour& tour) {
    const std::size_t n = static_cast<std::size_t>(inst.num_cities());
    if (tour.size() != n || tour[0] != 0) return false;
    std::vector<char> seen(n, 0);
    for (int c : tour) {
        if (c < 0 || c >= static_cast<int>(n) || seen[static_cast<std::size_t>(c)]) return false;
        seen[static_cast<std::size_t>(c)] = 1;
    }
    return true;
}

double tour_length(const Instance& inst, const Tour& tour) {
    double len = 0;
    const std::size_t n = tour.size();
    for (std::size_t i = 0; i < n; ++i) len += inst.distance(tour[i], tour[(i + 1) % n]);
    return len;
}

long long plan_weight(const Instance& inst, const PackingPlan& plan) {
    long long w = 0;
    for (std::size_t j = 0; j < plan.size(); ++j)
        if (plan[j]) w += inst.item(static_cast<int>(j)).weight;
    return w;
}

long long plan_profit(const Instance& inst, const PackingPlan& plan) {
    long long p = 0;
    for (std::size_t j = 0; j < plan.size(); ++j)
        if (plan[j]) p += inst.item(static_cast<int>(j)).profit;
    return p;
}

long long weight_at(const Instance& inst, const Tour& tour, const PackingPlan& plan,
                    int visited) {
    if (visited < 0 || visited > inst.num_cities())
        throw ContractError("weight_at: visited count out of range");
    long long w = 0;
    for (int i = 0; i < visited; ++i)
        for (int j : inst.items_at(tour[static_cast<std::size_t>(i)]))
            if (plan[static_cast<std::size_t>(j)]) w += inst.item(j).weight;
    return w;
}

double velocity(const Instance& inst, long long weight) {
    if (inst.capacity() == 0) {
        if (weight > 0) throw ContractError("velocity: positive weight with zero capacity");
        return inst.max_speed();
    }
    if (weight >= inst.capacity()) return inst.min_speed();
    double frac = static_cast<double>(weight) / static_cast<double>(inst.capacity());
    return inst.max_speed() - frac * (inst.max_speed() - inst.min_speed());
}

Evaluation evaluate(const Instance& inst, const Tour& tour, const PackingPlan& plan) {
    if (tour.size() != static_cast<std::size_t>(inst.num_cities()) || tour[0] != 0)
        throw ContractError("evaluate: tour must visit all cities starting at city 0");
    if (plan.size() != static_cast<std::size_t>(inst.num_items()))
        throw ContractError("evaluate: plan size != item count");

    long long total = plan_weight(inst, plan);
    if (total > inst.capacity()) throw ContractError("evaluate: plan exceeds capacity");

    const std::size_t n = tour.size();
    long long w = 0;
    double time = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int city = tour[i];
        for (int j : inst.items_at(city))
            if (plan[static_cast<std::size_t>(j)]) w += inst.item(j).weight;
        time += inst.distance(city, tour[(i + 1) % n]) / velocity(inst, w);
    }
    return Evaluation{time, plan_profit(inst, plan)};
}

}  // namespace bittp
