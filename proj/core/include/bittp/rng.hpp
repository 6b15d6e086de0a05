#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace bittp {

/// Deterministic random source. All stochastic operators draw from this class
/// only, and every draw procedure below is fixed (no std::uniform_*_distribution,
/// whose output is implementation-defined), so a seed reproduces bit-identical
/// runs on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). bound must be positive. The modulo bias
    /// is below 2^-40 for every bound used here (bounds are at most ~10^6).
    std::size_t uniform_int(std::size_t bound) { return gen_() % bound; }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

/// k distinct indices from {0, ..., pool-1}, uniformly without replacement,
/// via a partial Fisher-Yates shuffle. Draws exactly k values from rng.
inline std::vector<std::size_t> sample_without_replacement(std::size_t pool, std::size_t k,
                                                           Rng& rng) {
    std::vector<std::size_t> idx(pool);
    for (std::size_t i = 0; i < pool; ++i) idx[i] = i;
    if (k > pool) k = pool;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + rng.uniform_int(pool - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace bittp
