#include "bittp/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "bittp/errors.hpp"

namespace bittp {

namespace {

struct Entry {
    long long profit;
    std::vector<Phenotype> phenotypes;
};

// Incremental non-dominated map keyed by time: both coordinates end up
// strictly increasing. Vectors attained more than once collect every
// phenotype.
void insert_point(std::map<double, Entry>& front, const Evaluation& e, const Tour& tour,
                  const PackingPlan& plan) {
    auto it = front.lower_bound(e.time);
    if (it != front.begin() && std::prev(it)->second.profit >= e.profit) return;
    if (it != front.end() && it->first == e.time) {
        if (it->second.profit > e.profit) return;
        if (it->second.profit == e.profit) {
            it->second.phenotypes.push_back(Phenotype{tour, plan});
            return;
        }
    }
    while (it != front.end() && it->second.profit <= e.profit) it = front.erase(it);
    front.emplace_hint(it, e.time, Entry{e.profit, {Phenotype{tour, plan}}});
}

}  // namespace

FrontArchive enumerate_front(const Instance& inst, const OracleLimits& limits) {
    const int n = inst.num_cities();
    const int m = inst.num_items();

    const auto too_many = [] {
        return ContractError("enumerate_front: (n-1)! * 2^m exceeds the state limit");
    };
    unsigned __int128 states = 1;
    for (int k = 2; k <= n - 1; ++k) {
        states *= static_cast<unsigned>(k);
        if (states > limits.max_states) throw too_many();
    }
    for (int j = 0; j < m; ++j) {
        states *= 2u;
        if (states > limits.max_states) throw too_many();
    }
    if (states > limits.max_states) throw too_many();

    std::map<double, Entry> front;
    const std::uint64_t masks = std::uint64_t{1} << m;
    PackingPlan plan(static_cast<std::size_t>(m), 0);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        long long weight = 0;
        for (int j = 0; j < m; ++j) {
            bool on = (mask >> j) & 1u;
            plan[static_cast<std::size_t>(j)] = on ? 1 : 0;
            if (on) weight += inst.item(j).weight;
        }
        if (weight > inst.capacity()) continue;

        Tour tour(static_cast<std::size_t>(n));
        std::iota(tour.begin(), tour.end(), 0);
        do {
            insert_point(front, evaluate(inst, tour, plan), tour, plan);
        } while (std::next_permutation(tour.begin() + 1, tour.end()));
    }

    FrontArchive out;
    out.points.reserve(front.size());
    for (auto& [time, entry] : front) {
        FrontPoint p;
        p.eval = Evaluation{time, entry.profit};
        p.solutions = std::move(entry.phenotypes);
        std::sort(p.solutions.begin(), p.solutions.end(), [](const Phenotype& a, const Phenotype& b) {
            if (a.tour != b.tour) return a.tour < b.tour;
            return a.plan < b.plan;
        });
        out.points.push_back(std::move(p));
    }
    if (!out.points.empty()) {
        out.bounds.time_min = out.points.front().eval.time;
        out.bounds.time_max = out.points.back().eval.time;
        out.bounds.profit_min = static_cast<double>(out.points.front().eval.profit);
        out.bounds.profit_max = static_cast<double>(out.points.back().eval.profit);
        out.ref = Evaluation{out.bounds.time_max, out.points.front().eval.profit};
    }
    return out;
}

}  // namespace bittp
