#include "bittp/encoding.hpp"

#include <algorithm>
#include <numeric>

#include "bittp/errors.hpp"

namespace bittp {

Phenotype decode(const Instance& inst, const Genotype& g) {
    const std::size_t n = static_cast<std::size_t>(inst.num_cities());
    const std::size_t m = static_cast<std::size_t>(inst.num_items());
    if (g.size() != n - 1 + m) throw ContractError("decode: genotype length mismatch");

    Phenotype p;
    p.tour.resize(n);
    p.tour[0] = 0;
    std::iota(p.tour.begin() + 1, p.tour.end(), 1);
    std::stable_sort(p.tour.begin() + 1, p.tour.end(),
                     [&](int a, int b) { return g[a - 1] < g[b - 1]; });

    p.plan.resize(m);
    for (std::size_t j = 0; j < m; ++j) p.plan[j] = g[n - 1 + j] > 0.5 ? 1 : 0;
    return p;
}

Phenotype repair_in_place(const Instance& inst, Genotype& g) {
    Phenotype p = decode(inst, g);
    long long w = plan_weight(inst, p.plan);
    if (w <= inst.capacity()) return p;

    const std::size_t key_base = static_cast<std::size_t>(inst.num_cities()) - 1;
    for (std::size_t pos = 1; pos < p.tour.size() && w > inst.capacity(); ++pos) {
        for (int j : inst.items_at(p.tour[pos])) {
            if (!p.plan[static_cast<std::size_t>(j)]) continue;
            p.plan[static_cast<std::size_t>(j)] = 0;
            g[key_base + static_cast<std::size_t>(j)] = 0.0;
            w -= inst.item(j).weight;
        }
    }
    return p;
}

Genotype repair(const Instance& inst, Genotype g) {
    repair_in_place(inst, g);
    return g;
}

Genotype encode(const Instance& inst, const Tour& tour, const PackingPlan& plan) {
    const std::size_t n = static_cast<std::size_t>(inst.num_cities());
    const std::size_t m = static_cast<std::size_t>(inst.num_items());
    if (!is_valid_tour(inst, tour)) throw ContractError("encode: invalid tour");
    if (plan.size() != m) throw ContractError("encode: plan size != item count");

    Genotype g(n - 1 + m, 0.0);
    for (std::size_t pos = 1; pos < n; ++pos)
        g[static_cast<std::size_t>(tour[pos]) - 1] =
            static_cast<double>(pos) / static_cast<double>(n);
    for (std::size_t j = 0; j < m; ++j) g[n - 1 + j] = plan[j] ? 1.0 : 0.0;
    return g;
}

}  // namespace bittp
