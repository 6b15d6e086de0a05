#include "bittp/subsolvers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bittp/errors.hpp"

namespace bittp {

namespace {

constexpr double kMoveEvalsPerSecond = 1e7;

Tour nearest_neighbor(const Instance& inst) {
    const int n = inst.num_cities();
    Tour tour;
    tour.reserve(static_cast<std::size_t>(n));
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    int cur = 0;
    tour.push_back(cur);
    used[0] = 1;
    for (int step = 1; step < n; ++step) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 1; c < n; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            double d = inst.distance(cur, c);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        tour.push_back(best);
        used[static_cast<std::size_t>(best)] = 1;
        cur = best;
    }
    return tour;
}

// First-improvement 2-opt, city 0 pinned at position 0. Stops at a local
// optimum or after `budget` candidate evaluations, whichever comes first.
void two_opt(const Instance& inst, Tour& tour, long long budget) {
    const int n = static_cast<int>(tour.size());
    if (n < 4) return;
    bool improved = true;
    while (improved && budget > 0) {
        improved = false;
        for (int a = 1; a + 1 < n && budget > 0; ++a) {
            for (int b = a + 1; b < n && budget > 0; ++b) {
                --budget;
                int pa = tour[static_cast<std::size_t>(a - 1)];
                int ca = tour[static_cast<std::size_t>(a)];
                int cb = tour[static_cast<std::size_t>(b)];
                int nb = tour[static_cast<std::size_t>((b + 1) % n)];
                double gain = inst.distance(pa, ca) + inst.distance(cb, nb) -
                              inst.distance(pa, cb) - inst.distance(ca, nb);
                if (gain > 1e-10) {
                    std::reverse(tour.begin() + a, tour.begin() + b + 1);
                    improved = true;
                }
            }
        }
    }
}

struct RatioOrder {
    const Instance& inst;
    // Descending profit/weight by exact cross-multiplication; zero-weight
    // items (infinite ratio) first; ties toward the lower index.
    bool operator()(int a, int b) const {
        const Item& ia = inst.item(a);
        const Item& ib = inst.item(b);
        if (ia.weight == 0 || ib.weight == 0) {
            if ((ia.weight == 0) != (ib.weight == 0)) return ia.weight == 0;
            return a < b;
        }
        long long lhs = ia.profit * ib.weight;
        long long rhs = ib.profit * ia.weight;
        if (lhs != rhs) return lhs > rhs;
        return a < b;
    }
};

std::vector<long long> dp_values(const Instance& inst, std::span<const int> items,
                                 long long capacity) {
    std::vector<long long> f(static_cast<std::size_t>(capacity) + 1, 0);
    for (int j : items) {
        const Item& it = inst.item(j);
        if (it.weight > capacity || it.profit <= 0) continue;
        for (long long c = capacity; c >= it.weight; --c)
            f[static_cast<std::size_t>(c)] =
                std::max(f[static_cast<std::size_t>(c)],
                         f[static_cast<std::size_t>(c - it.weight)] + it.profit);
    }
    return f;
}

// Exact 0/1 knapsack with O(capacity) memory: divide-and-conquer plan
// reconstruction over forward/backward value arrays (split capacity at the
// argmax, smallest split on ties).
void kp_exact(const Instance& inst, std::span<const int> items, long long capacity,
              std::vector<int>& chosen) {
    if (items.empty() || capacity < 0) return;
    if (items.size() == 1) {
        const Item& it = inst.item(items[0]);
        if (it.weight <= capacity && it.profit > 0) chosen.push_back(items[0]);
        return;
    }
    std::size_t mid = items.size() / 2;
    auto left = items.subspan(0, mid);
    auto right = items.subspan(mid);
    std::vector<long long> fl = dp_values(inst, left, capacity);
    std::vector<long long> fr = dp_values(inst, right, capacity);
    long long best = -1, split = 0;
    for (long long c = 0; c <= capacity; ++c) {
        long long v = fl[static_cast<std::size_t>(c)] +
                      fr[static_cast<std::size_t>(capacity - c)];
        if (v > best) {
            best = v;
            split = c;
        }
    }
    fl.clear();
    fl.shrink_to_fit();
    fr.clear();
    fr.shrink_to_fit();
    kp_exact(inst, left, split, chosen);
    kp_exact(inst, right, capacity - split, chosen);
}

}  // namespace

void validate(const SubsolverConfig& cfg, const Instance& inst) {
    if (!(cfg.tsp_budget_s > 0)) throw std::invalid_argument("tsp budget must be positive");
    if (cfg.delta < 0) throw std::invalid_argument("delta must be nonnegative");
    if (cfg.external_tour && !is_valid_tour(inst, *cfg.external_tour))
        throw std::invalid_argument("external tour is not a permutation starting at city 0");
}

Tour solve_tsp(const Instance& inst, const SubsolverConfig& cfg) {
    validate(cfg, inst);
    if (cfg.external_tour) return *cfg.external_tour;
    Tour tour = nearest_neighbor(inst);
    long long budget = static_cast<long long>(std::llround(cfg.tsp_budget_s * kMoveEvalsPerSecond));
    two_opt(inst, tour, budget);
    return tour;
}

Tour symmetric_tour(const Tour& tour) {
    Tour rev = tour;
    if (rev.size() > 2) std::reverse(rev.begin() + 1, rev.end());
    return rev;
}

std::vector<int> items_by_ratio(const Instance& inst) {
    std::vector<int> order(static_cast<std::size_t>(inst.num_items()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), RatioOrder{inst});
    return order;
}

PackingPlan solve_kp_ghdp(const Instance& inst, const SubsolverConfig& cfg) {
    validate(cfg, inst);
    const int m = inst.num_items();
    PackingPlan plan(static_cast<std::size_t>(m), 0);
    if (m == 0) return plan;

    std::vector<int> order = items_by_ratio(inst);

    const long long capacity = inst.capacity();
    const long long delta = std::min(cfg.delta, capacity);
    const long long greedy_cap = capacity - delta;

    long long used = 0;
    std::size_t cut = 0;  // first ratio-order position handled by the DP
    for (; cut < order.size(); ++cut) {
        const Item& it = inst.item(order[cut]);
        if (used + it.weight > greedy_cap) break;
        plan[static_cast<std::size_t>(order[cut])] = 1;
        used += it.weight;
    }

    std::vector<int> rest(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
    std::vector<int> chosen;
    kp_exact(inst, rest, capacity - used, chosen);
    for (int j : chosen) plan[static_cast<std::size_t>(j)] = 1;
    return plan;
}

Tour load_tour_file(const Instance& inst, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open tour file: " + path);
    std::vector<int> cities;
    std::string tok;
    int line = 1;
    // Track line numbers manually so a bad token can be located.
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t i = 0;
    while (i < content.size()) {
        while (i < content.size() && std::isspace(static_cast<unsigned char>(content[i]))) {
            if (content[i] == '\n') ++line;
            ++i;
        }
        std::size_t j = i;
        while (j < content.size() && !std::isspace(static_cast<unsigned char>(content[j]))) ++j;
        if (j > i) {
            int v = 0;
            auto [p, ec] = std::from_chars(content.data() + i, content.data() + j, v);
            if (ec != std::errc{} || p != content.data() + j)
                throw ParseError(line, "malformed city index: '" + content.substr(i, j - i) + "'");
            cities.push_back(v - 1);  // file is 1-based
        }
        i = j;
    }
    if (cities.size() != static_cast<std::size_t>(inst.num_cities()))
        throw ParseError(0, "tour length != DIMENSION");
    std::vector<char> seen(cities.size(), 0);
    for (int c : cities) {
        if (c < 0 || c >= inst.num_cities() || seen[static_cast<std::size_t>(c)])
            throw ParseError(0, "tour is not a permutation of 1..n");
        seen[static_cast<std::size_t>(c)] = 1;
    }
    auto zero = std::find(cities.begin(), cities.end(), 0);
    std::rotate(cities.begin(), zero, cities.end());
    return cities;
}

}  // namespace bittp
