#pragma once

#include <vector>

#include "bittp/model.hpp"

namespace bittp {

/// Random-key genotype: n-1 tour keys (for cities 1..n-1) followed by m item
/// keys, every key in [0, 1].
using Genotype = std::vector<double>;

struct Phenotype {
    Tour tour;
    PackingPlan plan;

    friend bool operator==(const Phenotype&, const Phenotype&) = default;
};

inline std::size_t genotype_length(const Instance& inst) {
    return static_cast<std::size_t>(inst.num_cities()) - 1 +
           static_cast<std::size_t>(inst.num_items());
}

/// Decode: city 0 first, cities 1..n-1 ordered by ascending tour key (stable —
/// ties keep ascending city order); item j is picked iff its key is strictly
/// greater than 0.5. The decoded plan may be infeasible; see repair.
Phenotype decode(const Instance& inst, const Genotype& g);

/// Feasibility repair. While the decoded plan exceeds capacity, walk the tour
/// from the second city onward and drop *all* picked items at each visited
/// city (zeroing their keys) until the load fits. One forward pass suffices,
/// so the home cities of dropped items always form a prefix of the visit
/// order among cities that had picked items. Feasible genotypes are returned
/// unchanged. Repairs g in place and returns the final (feasible) phenotype.
Phenotype repair_in_place(const Instance& inst, Genotype& g);

/// Value-returning convenience wrapper around repair_in_place.
Genotype repair(const Instance& inst, Genotype g);

/// Encode a phenotype so that decode inverts it exactly: the city at 1-based
/// tour position p gets key (p-1)/n, picked items key 1.0, others 0.0.
Genotype encode(const Instance& inst, const Tour& tour, const PackingPlan& plan);

}  // namespace bittp
