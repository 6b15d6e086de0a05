#pragma once

#include <map>
#include <span>
#include <vector>

#include "bittp/encoding.hpp"
#include "bittp/model.hpp"

namespace bittp {

/// Normalization bounds for the two objectives. Hypervolume and crowding
/// always work on explicitly supplied bounds — nothing is silently recomputed.
struct Bounds {
    double time_min = 0.0, time_max = 1.0;
    double profit_min = 0.0, profit_max = 1.0;

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// One Pareto-front point: an objective vector plus every known solution
/// attaining it (deduplicated, lexicographically sorted).
struct FrontPoint {
    Evaluation eval;
    std::vector<Phenotype> solutions;
};

/// A mutually non-dominated set, sorted by strictly increasing time — and
/// therefore strictly increasing profit. Carries its normalization bounds and
/// the reference point (worst time, worst profit corner) used for scoring.
struct FrontArchive {
    std::vector<FrontPoint> points;
    Bounds bounds;
    Evaluation ref;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

/// Keep only the non-dominated objective vectors (deduplicated). Bounds are
/// set to the extremes of the surviving points and ref to (time_max,
/// profit_min); callers may overwrite both afterwards.
FrontArchive pareto_filter(std::span<const Evaluation> evals);

/// Same, but each evaluation carries the phenotype that produced it. Vectors
/// attained by several distinct phenotypes keep all of them.
FrontArchive make_front(std::span<const Evaluation> evals, std::span<const Phenotype> phenotypes);

/// Replace bounds and reference point (e.g. with pinned competition bounds).
FrontArchive with_bounds(FrontArchive a, const Bounds& bounds, const Evaluation& ref);

/// Exact 2-D hypervolume of the archive under its bounds and reference point,
/// by a single sweep over the sorted points. Objectives are normalized by the
/// bounds (a degenerate bound contributes zero). Throws ContractError if any
/// member lies outside the reference box (time > ref.time or
/// profit < ref.profit).
double hypervolume(const FrontArchive& a);

/// The size-q subset of the archive maximizing hypervolume, found by dynamic
/// programming in O(|A|^2 * q). Ties resolve toward smaller indices. The
/// result keeps the input's bounds and reference point. Throws ContractError
/// unless 1 <= q <= |A|.
FrontArchive select_hv_subset(const FrontArchive& a, int q);

/// Single-objective score: profit minus renting-ratio-weighted travel time.
double ttp_score(const Instance& inst, const Evaluation& e);

/// Cumulative non-dominated archive of objective vectors with a running
/// hypervolume under fixed bounds. Every hypervolume increment is assembled
/// from explicitly clamped, non-negative rectangle pieces, so the reported
/// value never decreases — in exact arithmetic and in floating point alike.
/// Points outside the reference box are kept in the front (dominance uses raw
/// objectives) but contribute zero volume.
class ParetoAccumulator {
public:
    ParetoAccumulator(const Bounds& bounds, const Evaluation& ref);

    /// Returns true if the point entered the front (false if dominated or
    /// duplicate). Never decreases hypervolume().
    bool insert(const Evaluation& e);

    std::size_t size() const noexcept { return points_.size(); }
    double hypervolume() const noexcept { return hv_; }

    /// Current front, ascending time.
    std::vector<Evaluation> front() const;

private:
    double norm_time(double t) const;
    double norm_profit(double p) const;
    double width(double t) const;           // clamped normalized slab width
    double clamped_profit(double p) const;  // normalized profit, floored at ref

    Bounds bounds_;
    Evaluation ref_;
    double u_ref_, v_ref_;
    std::map<double, long long> points_;  // time -> profit; both strictly increasing
    double hv_ = 0.0;
};

}  // namespace bittp
