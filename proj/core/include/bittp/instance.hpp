#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bittp/errors.hpp"

namespace bittp {

enum class EdgeWeightKind {
    Ceil2D,          ///< distances = ceil(euclidean) over node coordinates
    ExplicitMatrix,  ///< full, symmetric, zero-diagonal distance matrix
};

/// One item. City indices are 0-based throughout the API; city 0 (the tour
/// start) never carries items. Text formats (instance files, front files,
/// tour files) are 1-based and converted at the I/O boundary.
struct Item {
    long long profit = 0;  // b_j >= 0, integer
    long long weight = 0;  // w_j >= 0, integer
    int city = 1;          // home city, in [1, n-1]
};

/// Immutable problem instance: n cities, m items placed at cities 1..n-1,
/// a single knapsack of capacity Q, and the speed range [vmin, vmax].
class Instance {
public:
    /// CEIL_2D instance from node coordinates.
    Instance(std::string name, std::vector<std::array<double, 2>> coords,
             std::vector<Item> items, long long capacity, double min_speed, double max_speed,
             double renting_ratio);

    /// EXPLICIT instance from a full distance matrix (must be symmetric with
    /// zero diagonal).
    Instance(std::string name, std::vector<std::vector<double>> matrix, std::vector<Item> items,
             long long capacity, double min_speed, double max_speed, double renting_ratio);

    /// The 4-city, 3-item worked example used across tests and docs. Its full
    /// Pareto front is known exactly (8 solutions, 7 distinct objective
    /// vectors).
    static Instance example4();

    const std::string& name() const noexcept { return name_; }
    int num_cities() const noexcept { return static_cast<int>(n_); }
    int num_items() const noexcept { return static_cast<int>(items_.size()); }
    long long capacity() const noexcept { return capacity_; }
    double min_speed() const noexcept { return min_speed_; }
    double max_speed() const noexcept { return max_speed_; }
    double renting_ratio() const noexcept { return renting_ratio_; }
    EdgeWeightKind edge_weight_kind() const noexcept { return kind_; }

    /// Distance between cities i and j (0-based). Symmetric, zero on the
    /// diagonal. Throws std::out_of_range for bad indices.
    double distance(int i, int j) const;

    const Item& item(int j) const { return items_.at(static_cast<std::size_t>(j)); }
    std::span<const Item> items() const noexcept { return items_; }

    /// Indices of the items homed at `city`, ascending. Empty for city 0.
    std::span<const int> items_at(int city) const;

    /// Sum of all item weights (upper bound on any plan weight).
    long long total_item_weight() const noexcept { return total_weight_; }
    long long total_item_profit() const noexcept { return total_profit_; }

    /// Node coordinates (empty for EXPLICIT instances).
    std::span<const std::array<double, 2>> coordinates() const noexcept { return coords_; }
    /// Full distance matrix (empty for CEIL_2D instances).
    const std::vector<std::vector<double>>& matrix() const noexcept { return matrix_; }

private:
    Instance() = default;
    void finalize();  // validates and builds the per-city item index

    std::string name_;
    std::size_t n_ = 0;
    EdgeWeightKind kind_ = EdgeWeightKind::Ceil2D;
    std::vector<std::array<double, 2>> coords_;      // CEIL_2D only
    std::vector<std::vector<double>> matrix_;        // EXPLICIT only
    std::vector<Item> items_;
    std::vector<std::vector<int>> items_by_city_;
    long long capacity_ = 0;
    long long total_weight_ = 0;
    long long total_profit_ = 0;
    double min_speed_ = 0.1;
    double max_speed_ = 1.0;
    double renting_ratio_ = 0.0;
};

/// Parse a benchmark-format instance ("PROBLEM NAME:", "DIMENSION:", ...,
/// NODE_COORD_SECTION / EDGE_WEIGHT_SECTION, ITEMS SECTION). Throws ParseError
/// with a 1-based line number on malformed input. The whole stream is read
/// into memory; pla-scale files (~340k items) parse in seconds.
Instance parse_instance(std::istream& in, const std::string& name_hint = "");
Instance parse_instance_file(const std::string& path);

}  // namespace bittp
