#include "bittp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace bittp {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

long long parse_int(std::string_view tok, int line, const std::string& what) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError(line, "non-integer " + what + ": '" + std::string(tok) + "'");
    return v;
}

double parse_real(std::string_view tok, int line, const std::string& what) {
    double v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError(line, "malformed " + what + ": '" + std::string(tok) + "'");
    return v;
}

}  // namespace

void Instance::finalize() {
    if (n_ < 2) throw std::invalid_argument("instance needs at least 2 cities");
    if (kind_ == EdgeWeightKind::Ceil2D) {
        if (coords_.size() != n_) throw std::invalid_argument("coordinate count != DIMENSION");
    } else {
        if (matrix_.size() != n_) throw std::invalid_argument("matrix size != DIMENSION");
        for (std::size_t i = 0; i < n_; ++i) {
            if (matrix_[i].size() != n_) throw std::invalid_argument("matrix row size != DIMENSION");
            if (matrix_[i][i] != 0.0) throw std::invalid_argument("matrix diagonal must be zero");
            for (std::size_t j = 0; j < i; ++j)
                if (matrix_[i][j] != matrix_[j][i])
                    throw std::invalid_argument("matrix must be symmetric");
        }
    }
    if (capacity_ < 0) throw std::invalid_argument("capacity must be nonnegative");
    if (!items_.empty() && capacity_ <= 0)
        throw std::invalid_argument("capacity must be positive when items exist");
    if (!(min_speed_ > 0) || !(max_speed_ >= min_speed_))
        throw std::invalid_argument("speeds must satisfy 0 < vmin <= vmax");
    if (renting_ratio_ < 0) throw std::invalid_argument("renting ratio must be nonnegative");

    items_by_city_.assign(n_, {});
    total_weight_ = 0;
    total_profit_ = 0;
    for (std::size_t j = 0; j < items_.size(); ++j) {
        const Item& it = items_[j];
        if (it.city < 1 || it.city >= static_cast<int>(n_))
            throw std::invalid_argument("item city out of range [1, n-1]");
        if (it.weight < 0 || it.profit < 0)
            throw std::invalid_argument("item weight/profit must be nonnegative");
        items_by_city_[static_cast<std::size_t>(it.city)].push_back(static_cast<int>(j));
        total_weight_ += it.weight;
        total_profit_ += it.profit;
    }
}

Instance::Instance(std::string name, std::vector<std::array<double, 2>> coords,
                   std::vector<Item> items, long long capacity, double min_speed,
                   double max_speed, double renting_ratio)
    : name_(std::move(name)),
      n_(coords.size()),
      kind_(EdgeWeightKind::Ceil2D),
      coords_(std::move(coords)),
      items_(std::move(items)),
      capacity_(capacity),
      min_speed_(min_speed),
      max_speed_(max_speed),
      renting_ratio_(renting_ratio) {
    finalize();
}

Instance::Instance(std::string name, std::vector<std::vector<double>> matrix,
                   std::vector<Item> items, long long capacity, double min_speed,
                   double max_speed, double renting_ratio)
    : name_(std::move(name)),
      n_(matrix.size()),
      kind_(EdgeWeightKind::ExplicitMatrix),
      matrix_(std::move(matrix)),
      items_(std::move(items)),
      capacity_(capacity),
      min_speed_(min_speed),
      max_speed_(max_speed),
      renting_ratio_(renting_ratio) {
    finalize();
}

Instance Instance::example4() {
    std::vector<std::vector<double>> d = {
        {0, 4, 9, 3},
        {4, 0, 5, 5},
        {9, 5, 0, 8},
        {3, 5, 8, 0},
    };
    std::vector<Item> items = {
        {34, 30, 1},  // at city 2 (1-based)
        {40, 40, 2},  // at city 3
        {25, 21, 3},  // at city 4
    };
    return Instance("example4", std::move(d), std::move(items), 80, 0.1, 1.0, 1.0);
}

double Instance::distance(int i, int j) const {
    if (i < 0 || j < 0 || i >= static_cast<int>(n_) || j >= static_cast<int>(n_))
        throw std::out_of_range("city index out of range");
    if (kind_ == EdgeWeightKind::ExplicitMatrix)
        return matrix_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const auto& a = coords_[static_cast<std::size_t>(i)];
    const auto& b = coords_[static_cast<std::size_t>(j)];
    double dx = a[0] - b[0], dy = a[1] - b[1];
    return std::ceil(std::sqrt(dx * dx + dy * dy));
}

std::span<const int> Instance::items_at(int city) const {
    const auto& v = items_by_city_.at(static_cast<std::size_t>(city));
    return {v.data(), v.size()};
}

Instance parse_instance(std::istream& in, const std::string& name_hint) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }

    std::string name = name_hint;
    long long dimension = -1, num_items = -1, capacity = -1;
    double min_speed = 0, max_speed = 0, renting_ratio = 0;
    bool have_min = false, have_max = false;
    std::string edge_type;
    std::string edge_format;
    std::vector<std::array<double, 2>> coords;
    std::vector<std::vector<double>> matrix;
    std::vector<Item> items;
    bool saw_coords = false, saw_matrix = false, saw_items = false;

    std::size_t li = 0;
    auto line_no = [&](std::size_t i) { return static_cast<int>(i) + 1; };

    auto require_dimension = [&](int at) {
        if (dimension < 2) throw ParseError(at, "section appears before a valid DIMENSION");
    };

    while (li < lines.size()) {
        std::string_view raw = lines[li];
        std::string_view t = trim(raw);
        if (t.empty()) {
            ++li;
            continue;
        }
        if (t == "EOF") break;

        auto colon = t.find(':');
        std::string_view key = trim(colon == std::string_view::npos ? t : t.substr(0, colon));
        std::string_view val = colon == std::string_view::npos
                                   ? std::string_view{}
                                   : trim(t.substr(colon + 1));
        int at = line_no(li);

        // Section names may carry a column legend, e.g.
        // "ITEMS SECTION (INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER):".
        if (key.substr(0, 13) == "ITEMS SECTION") {
            require_dimension(at);
            if (num_items < 0) throw ParseError(at, "ITEMS SECTION before NUMBER OF ITEMS");
            ++li;
            items.reserve(static_cast<std::size_t>(num_items));
            for (long long k = 0; k < num_items; ++k) {
                while (li < lines.size() && trim(lines[li]).empty()) ++li;
                if (li >= lines.size())
                    throw ParseError(line_no(lines.size()), "unexpected end of file in ITEMS SECTION");
                auto toks = split_ws(lines[li]);
                int at_item = line_no(li);
                if (toks.size() != 4)
                    throw ParseError(at_item, "expected 'index profit weight city'");
                long long idx = parse_int(toks[0], at_item, "item index");
                if (idx != k + 1) throw ParseError(at_item, "item index out of order");
                long long profit = parse_int(toks[1], at_item, "profit");
                long long weight = parse_int(toks[2], at_item, "weight");
                long long city = parse_int(toks[3], at_item, "item city");
                if (profit < 0) throw ParseError(at_item, "negative profit");
                if (weight < 0) throw ParseError(at_item, "negative weight");
                if (city == 1) throw ParseError(at_item, "item assigned to city 1");
                if (city < 2 || city > dimension)
                    throw ParseError(at_item, "item city out of range");
                items.push_back(Item{profit, weight, static_cast<int>(city - 1)});
                ++li;
            }
            saw_items = true;
            continue;
        }
        if (key.substr(0, 18) == "NODE_COORD_SECTION") {
            require_dimension(at);
            ++li;
            coords.reserve(static_cast<std::size_t>(dimension));
            for (long long k = 0; k < dimension; ++k) {
                while (li < lines.size() && trim(lines[li]).empty()) ++li;
                if (li >= lines.size())
                    throw ParseError(line_no(lines.size()),
                                     "unexpected end of file in NODE_COORD_SECTION");
                auto toks = split_ws(lines[li]);
                int at_node = line_no(li);
                if (toks.size() != 3) throw ParseError(at_node, "expected 'index x y'");
                long long idx = parse_int(toks[0], at_node, "node index");
                if (idx != k + 1) throw ParseError(at_node, "node index out of order");
                double x = parse_real(toks[1], at_node, "x coordinate");
                double y = parse_real(toks[2], at_node, "y coordinate");
                coords.push_back({x, y});
                ++li;
            }
            saw_coords = true;
            continue;
        }
        if (key.substr(0, 19) == "EDGE_WEIGHT_SECTION") {
            require_dimension(at);
            if (edge_type != "EXPLICIT")
                throw ParseError(at, "EDGE_WEIGHT_SECTION requires EDGE_WEIGHT_TYPE EXPLICIT");
            if (!edge_format.empty() && edge_format != "FULL_MATRIX")
                throw ParseError(at, "unsupported EDGE_WEIGHT_FORMAT: " + edge_format);
            ++li;
            std::size_t need = static_cast<std::size_t>(dimension) * static_cast<std::size_t>(dimension);
            std::vector<double> flat;
            flat.reserve(need);
            while (flat.size() < need) {
                while (li < lines.size() && trim(lines[li]).empty()) ++li;
                if (li >= lines.size())
                    throw ParseError(line_no(lines.size()),
                                     "unexpected end of file in EDGE_WEIGHT_SECTION");
                for (auto tok : split_ws(lines[li]))
                    flat.push_back(parse_real(tok, line_no(li), "edge weight"));
                ++li;
            }
            if (flat.size() != need)
                throw ParseError(line_no(li - 1), "too many values in EDGE_WEIGHT_SECTION");
            matrix.assign(static_cast<std::size_t>(dimension),
                          std::vector<double>(static_cast<std::size_t>(dimension)));
            for (std::size_t r = 0; r < matrix.size(); ++r)
                for (std::size_t c = 0; c < matrix.size(); ++c)
                    matrix[r][c] = flat[r * matrix.size() + c];
            saw_matrix = true;
            continue;
        }

        if (colon == std::string_view::npos)
            throw ParseError(at, "malformed header line: '" + std::string(t) + "'");

        if (key == "PROBLEM NAME") {
            name = std::string(val);
        } else if (key == "KNAPSACK DATA TYPE") {
            // informational; ignored
        } else if (key == "DIMENSION") {
            dimension = parse_int(val, at, "DIMENSION");
            if (dimension < 2) throw ParseError(at, "DIMENSION must be at least 2");
        } else if (key == "NUMBER OF ITEMS") {
            num_items = parse_int(val, at, "NUMBER OF ITEMS");
            if (num_items < 0) throw ParseError(at, "NUMBER OF ITEMS must be nonnegative");
        } else if (key == "CAPACITY OF KNAPSACK") {
            capacity = parse_int(val, at, "CAPACITY OF KNAPSACK");
            if (capacity < 0) throw ParseError(at, "capacity must be nonnegative");
        } else if (key == "MIN SPEED") {
            min_speed = parse_real(val, at, "MIN SPEED");
            have_min = true;
        } else if (key == "MAX SPEED") {
            max_speed = parse_real(val, at, "MAX SPEED");
            have_max = true;
        } else if (key == "RENTING RATIO") {
            renting_ratio = parse_real(val, at, "RENTING RATIO");
            if (renting_ratio < 0) throw ParseError(at, "RENTING RATIO must be nonnegative");
        } else if (key == "EDGE_WEIGHT_TYPE") {
            edge_type = std::string(val);
            if (edge_type != "CEIL_2D" && edge_type != "EXPLICIT")
                throw ParseError(at, "unknown EDGE_WEIGHT_TYPE: " + edge_type);
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            edge_format = std::string(val);
        } else {
            throw ParseError(at, "unknown header key: '" + std::string(key) + "'");
        }
        ++li;
    }

    auto missing = [&](const std::string& k) { return ParseError(0, "missing required key: " + k); };
    if (dimension < 0) throw missing("DIMENSION");
    if (num_items < 0) throw missing("NUMBER OF ITEMS");
    if (capacity < 0) throw missing("CAPACITY OF KNAPSACK");
    if (!have_min) throw missing("MIN SPEED");
    if (!have_max) throw missing("MAX SPEED");
    if (edge_type.empty()) throw missing("EDGE_WEIGHT_TYPE");
    if (num_items > 0 && !saw_items) throw missing("ITEMS SECTION");
    if (!(min_speed > 0) || !(max_speed >= min_speed))
        throw ParseError(0, "speeds must satisfy 0 < MIN SPEED <= MAX SPEED");
    if (num_items > 0 && capacity == 0)
        throw ParseError(0, "CAPACITY OF KNAPSACK must be positive when items exist");

    try {
        if (edge_type == "EXPLICIT") {
            if (!saw_matrix) throw missing("EDGE_WEIGHT_SECTION");
            return Instance(name, std::move(matrix), std::move(items), capacity, min_speed,
                            max_speed, renting_ratio);
        }
        if (!saw_coords) throw missing("NODE_COORD_SECTION");
        return Instance(name, std::move(coords), std::move(items), capacity, min_speed, max_speed,
                        renting_ratio);
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

Instance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open instance file: " + path);
    std::string stem = path;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    return parse_instance(in, stem);
}

}  // namespace bittp
