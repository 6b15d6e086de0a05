#pragma once

#include <cstdint>

#include "bittp/metrics.hpp"

namespace bittp {

struct OracleLimits {
    /// Cap on (n-1)! * 2^m enumeration states; exceeding it throws
    /// ContractError before any work happens.
    std::uint64_t max_states = 1'000'000;
};

/// Exhaustive ground truth for tiny instances: every tour (city 0 fixed)
/// crossed with every feasible packing plan, reduced to the exact Pareto
/// front. Every phenotype attaining a front point is kept, lexicographically
/// sorted, so solver output can be checked for completeness as well as
/// correctness.
FrontArchive enumerate_front(const Instance& inst, const OracleLimits& limits = {});

}  // namespace bittp
