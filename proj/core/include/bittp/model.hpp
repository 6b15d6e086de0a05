#pragma once

#include <vector>

#include "bittp/instance.hpp"

namespace bittp {

/// Tour: permutation of the 0-based cities with tour[0] == 0 (the thief always
/// starts and ends at city 0; the renderer prints cities 1-based).
using Tour = std::vector<int>;

/// Packing plan: one 0/1 flag per item, indexed like Instance::items().
using PackingPlan = std::vector<char>;

/// Objective vector: travel time is minimized, profit is maximized.
struct Evaluation {
    double time = 0.0;
    long long profit = 0;

    friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// Pareto dominance under (min time, max profit): a dominates b iff a is no
/// worse in both objectives and strictly better in at least one.
inline bool dominates(const Evaluation& a, const Evaluation& b) {
    return a.time <= b.time && a.profit >= b.profit &&
           (a.time < b.time || a.profit > b.profit);
}

bool is_valid_tour(const Instance& inst, const Tour& tour);

double tour_length(const Instance& inst, const Tour& tour);

long long plan_weight(const Instance& inst, const PackingPlan& plan);
long long plan_profit(const Instance& inst, const PackingPlan& plan);

/// Knapsack weight after the thief has visited the first `visited` cities of
/// the tour (picking every planned item at each). visited ranges over [0, n];
/// 0 means "before any city", n means "after the full tour".
long long weight_at(const Instance& inst, const Tour& tour, const PackingPlan& plan, int visited);

/// Speed at knapsack weight w: linear drop from vmax (empty) to vmin (full);
/// vmin beyond capacity. Throws ContractError for w > 0 on a zero-capacity
/// instance.
double velocity(const Instance& inst, long long weight);

/// Full objective evaluation. The plan must be feasible (weight <= capacity);
/// callers repair first. Throws ContractError otherwise.
Evaluation evaluate(const Instance& inst, const Tour& tour, const PackingPlan& plan);

}  // namespace bittp
