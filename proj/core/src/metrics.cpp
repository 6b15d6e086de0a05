#include "bittp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bittp/errors.hpp"

namespace bittp {

namespace {

double normalize(double x, double lo, double hi) {
    return hi > lo ? (x - lo) / (hi - lo) : 0.0;
}

bool phenotype_less(const Phenotype& a, const Phenotype& b) {
    if (a.tour != b.tour) return a.tour < b.tour;
    return a.plan < b.plan;
}

Bounds extremes_of(const std::vector<FrontPoint>& pts) {
    Bounds b;
    if (pts.empty()) return b;
    b.time_min = pts.front().eval.time;        // ascending time
    b.time_max = pts.back().eval.time;
    b.profit_min = static_cast<double>(pts.front().eval.profit);  // ascending profit
    b.profit_max = static_cast<double>(pts.back().eval.profit);
    return b;
}

FrontArchive filter_impl(std::vector<std::pair<Evaluation, const Phenotype*>> entries) {
    // Sort by (time asc, profit desc); a sweep keeping strictly improving
    // profit then yields exactly the non-dominated, deduplicated vectors.
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.first.time != b.first.time) return a.first.time < b.first.time;
        return a.first.profit > b.first.profit;
    });

    FrontArchive out;
    long long best_profit = std::numeric_limits<long long>::min();
    bool any = false;
    for (const auto& [eval, pheno] : entries) {
        if (any && eval.profit <= best_profit) {
            // Dominated — or a duplicate of the previous point, whose
            // phenotype list still wants this solution.
            if (pheno != nullptr && eval.time == out.points.back().eval.time &&
                eval.profit == out.points.back().eval.profit)
                out.points.back().solutions.push_back(*pheno);
            continue;
        }
        FrontPoint p;
        p.eval = eval;
        if (pheno != nullptr) p.solutions.push_back(*pheno);
        out.points.push_back(std::move(p));
        best_profit = eval.profit;
        any = true;
    }

    for (auto& p : out.points) {
        std::sort(p.solutions.begin(), p.solutions.end(), phenotype_less);
        p.solutions.erase(std::unique(p.solutions.begin(), p.solutions.end()),
                          p.solutions.end());
    }
    out.bounds = extremes_of(out.points);
    out.ref = Evaluation{out.bounds.time_max, static_cast<long long>(out.bounds.profit_min)};
    return out;
}

}  // namespace

FrontArchive pareto_filter(std::span<const Evaluation> evals) {
    std::vector<std::pair<Evaluation, const Phenotype*>> entries;
    entries.reserve(evals.size());
    for (const auto& e : evals) entries.emplace_back(e, nullptr);
    return filter_impl(std::move(entries));
}

FrontArchive make_front(std::span<const Evaluation> evals,
                        std::span<const Phenotype> phenotypes) {
    if (evals.size() != phenotypes.size())
        throw ContractError("make_front: evaluation/phenotype count mismatch");
    std::vector<std::pair<Evaluation, const Phenotype*>> entries;
    entries.reserve(evals.size());
    for (std::size_t i = 0; i < evals.size(); ++i) entries.emplace_back(evals[i], &phenotypes[i]);
    return filter_impl(std::move(entries));
}

FrontArchive with_bounds(FrontArchive a, const Bounds& bounds, const Evaluation& ref) {
    a.bounds = bounds;
    a.ref = ref;
    return a;
}

double hypervolume(const FrontArchive& a) {
    if (a.empty()) return 0.0;
    const Bounds& b = a.bounds;
    double u_ref = normalize(a.ref.time, b.time_min, b.time_max);
    double v_ref = normalize(static_cast<double>(a.ref.profit), b.profit_min, b.profit_max);
    double hv = 0.0;
    double v_prev = v_ref;
    for (const auto& p : a.points) {
        if (p.eval.time > a.ref.time || p.eval.profit < a.ref.profit)
            throw ContractError("hypervolume: front member outside the reference box");
        double u = normalize(p.eval.time, b.time_min, b.time_max);
        double v = normalize(static_cast<double>(p.eval.profit), b.profit_min, b.profit_max);
        hv += (u_ref - u) * (v - v_prev);
        v_prev = v;
    }
    return hv;
}

FrontArchive select_hv_subset(const FrontArchive& a, int q) {
    const int k = static_cast<int>(a.size());
    if (q < 1 || q > k) throw ContractError("select_hv_subset: q out of range [1, |A|]");

    const Bounds& b = a.bounds;
    double u_ref = normalize(a.ref.time, b.time_min, b.time_max);
    double v_ref = normalize(static_cast<double>(a.ref.profit), b.profit_min, b.profit_max);
    std::vector<double> u(static_cast<std::size_t>(k)), v(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const auto& e = a.points[static_cast<std::size_t>(j)].eval;
        if (e.time > a.ref.time || e.profit < a.ref.profit)
            throw ContractError("select_hv_subset: front member outside the reference box");
        u[static_cast<std::size_t>(j)] = normalize(e.time, b.time_min, b.time_max);
        v[static_cast<std::size_t>(j)] = normalize(static_cast<double>(e.profit), b.profit_min,
                                                   b.profit_max);
    }
    auto rect = [&](int prev, int j) {
        double base = prev < 0 ? v_ref : v[static_cast<std::size_t>(prev)];
        return (u_ref - u[static_cast<std::size_t>(j)]) * (v[static_cast<std::size_t>(j)] - base);
    };

    // best[c][j]: max volume of a c-point chain whose time-largest member is
    // j. Ties resolve toward the smallest predecessor / smallest final index,
    // which makes the selection deterministic (and lexicographically smallest
    // whenever tied volumes are exact).
    constexpr double kUnset = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best(static_cast<std::size_t>(q + 1),
                                          std::vector<double>(static_cast<std::size_t>(k), kUnset));
    std::vector<std::vector<int>> parent(static_cast<std::size_t>(q + 1),
                                         std::vector<int>(static_cast<std::size_t>(k), -1));
    for (int j = 0; j < k; ++j) best[1][static_cast<std::size_t>(j)] = rect(-1, j);
    for (int c = 2; c <= q; ++c) {
        for (int j = c - 1; j < k; ++j) {
            for (int p = c - 2; p < j; ++p) {
                if (best[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(p)] == kUnset)
                    continue;
                double cand =
                    best[static_cast<std::size_t>(c - 1)][static_cast<std::size_t>(p)] + rect(p, j);
                if (cand > best[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)]) {
                    best[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] = cand;
                    parent[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] = p;
                }
            }
        }
    }

    int last = -1;
    double best_total = kUnset;
    for (int j = q - 1; j < k; ++j) {
        if (best[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)] > best_total) {
            best_total = best[static_cast<std::size_t>(q)][static_cast<std::size_t>(j)];
            last = j;
        }
    }

    std::vector<int> chosen;
    for (int c = q, j = last; c >= 1; --c) {
        chosen.push_back(j);
        j = parent[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
    }
    std::reverse(chosen.begin(), chosen.end());

    FrontArchive out;
    out.bounds = a.bounds;
    out.ref = a.ref;
    out.points.reserve(chosen.size());
    for (int j : chosen) out.points.push_back(a.points[static_cast<std::size_t>(j)]);
    return out;
}

double ttp_score(const Instance& inst, const Evaluation& e) {
    return static_cast<double>(e.profit) - inst.renting_ratio() * e.time;
}

ParetoAccumulator::ParetoAccumulator(const Bounds& bounds, const Evaluation& ref)
    : bounds_(bounds), ref_(ref) {
    u_ref_ = norm_time(ref.time);
    v_ref_ = norm_profit(static_cast<double>(ref.profit));
}

double ParetoAccumulator::norm_time(double t) const {
    return normalize(t, bounds_.time_min, bounds_.time_max);
}

double ParetoAccumulator::norm_profit(double p) const {
    return normalize(p, bounds_.profit_min, bounds_.profit_max);
}

double ParetoAccumulator::width(double t) const { return std::max(0.0, u_ref_ - norm_time(t)); }

double ParetoAccumulator::clamped_profit(double p) const {
    return std::max(v_ref_, norm_profit(p));
}

bool ParetoAccumulator::insert(const Evaluation& e) {
    auto it = points_.lower_bound(e.time);
    if (it != points_.begin()) {
        auto prev = std::prev(it);
        if (prev->second >= e.profit) return false;  // dominated by a faster point
    }
    if (it != points_.end() && it->first == e.time && it->second >= e.profit)
        return false;  // duplicate, or dominated at equal time

    // Fold the newly covered area in as non-negative rectangle pieces. The
    // erased points have time >= e.time and profit <= e.profit, ascending in
    // both, so every factor below is nonnegative before its clamp already.
    const double w_new = width(e.time);
    double v_level = it == points_.begin() ? v_ref_ : clamped_profit(std::prev(it)->second);
    double delta = 0.0;
    while (it != points_.end() && it->second <= e.profit) {
        double v_top = clamped_profit(it->second);
        delta += std::max(0.0, w_new - width(it->first)) * std::max(0.0, v_top - v_level);
        v_level = std::max(v_level, v_top);
        it = points_.erase(it);
    }
    double w_top = it == points_.end() ? 0.0 : width(it->first);
    delta += std::max(0.0, w_new - w_top) *
             std::max(0.0, clamped_profit(static_cast<double>(e.profit)) - v_level);

    points_.emplace_hint(it, e.time, e.profit);
    hv_ += delta;
    return true;
}

std::vector<Evaluation> ParetoAccumulator::front() const {
    std::vector<Evaluation> out;
    out.reserve(points_.size());
    for (const auto& [t, p] : points_) out.push_back(Evaluation{t, p});
    return out;
}

}  // namespace bittp
