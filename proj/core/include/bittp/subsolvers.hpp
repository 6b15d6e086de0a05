#pragma once

#include <optional>
#include <string>

#include "bittp/model.hpp"

namespace bittp {

/// Configuration for the two single-objective warm-start solvers.
struct SubsolverConfig {
    /// Tour-improvement budget in seconds. Mapped to a deterministic budget of
    /// candidate 2-opt evaluations (1e7 per second), so identical configs
    /// reproduce identical tours regardless of machine speed.
    double tsp_budget_s = 5.0;

    /// Greedy/DP split for the knapsack solver: items are packed greedily (by
    /// profit/weight ratio) up to weight Q - delta, the rest is solved exactly
    /// by DP over the remaining capacity. Clamped to [0, Q] at use; delta = Q
    /// yields the exact optimum, delta = 0 is pure greedy plus whatever the
    /// leftover capacity admits.
    long long delta = 50'000;

    /// Pre-computed tour (e.g. from an external solver). Skips construction
    /// and improvement entirely.
    std::optional<Tour> external_tour;
};

/// Throws std::invalid_argument on non-positive budget or negative delta.
void validate(const SubsolverConfig& cfg, const Instance& inst);

/// Budgeted deterministic TSP heuristic: nearest-neighbor construction from
/// city 0, then first-improvement 2-opt sweeps until locally optimal or the
/// move budget runs out. With an external tour configured, that tour is
/// validated and rotated to start at city 0 instead. The result is never
/// longer than the nearest-neighbor tour.
Tour solve_tsp(const Instance& inst, const SubsolverConfig& cfg);

/// The reversed traversal of the same cycle: first city fixed, remainder
/// reversed. Same length, but a different pickup order.
Tour symmetric_tour(const Tour& tour);

/// Greedy+DP knapsack solve described at SubsolverConfig::delta, ignoring the
/// tour entirely. Deterministic: ratio ties break toward the lower item
/// index (exact integer cross-multiplication, zero-weight items first). The
/// result's profit is never below the pure-greedy plan's.
PackingPlan solve_kp_ghdp(const Instance& inst, const SubsolverConfig& cfg);

/// All item indices in descending profit/weight order (the ordering used by
/// the greedy phase and by the seeded initialization): zero-weight items
/// first, exact integer cross-multiplication, ties toward the lower index.
std::vector<int> items_by_ratio(const Instance& inst);

/// Parse a whitespace-separated 1-based city permutation and rotate it to
/// start at city 0. Throws ParseError if the file is not a permutation of
/// 1..n.
Tour load_tour_file(const Instance& inst, const std::string& path);

}  // namespace bittp
