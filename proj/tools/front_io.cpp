#include "front_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bittp/errors.hpp"

namespace bittp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
}

long long to_int(const std::string& tok, int line, const char* what) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError(line, std::string("malformed ") + what + ": '" + tok + "'");
    return v;
}

double to_real(const std::string& tok, int line, const char* what) {
    double v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError(line, std::string("malformed ") + what + ": '" + tok + "'");
    return v;
}

FrontRecord record_from_lines(const std::vector<std::pair<int, std::string>>& block) {
    if (block.size() != 3)
        throw ParseError(block.empty() ? 0 : block.front().first,
                         "front record must have exactly 3 lines (tour, items, objectives)");
    FrontRecord rec;
    for (const auto& tok : tokens_of(block[0].second)) {
        long long c = to_int(tok, block[0].first, "city index");
        if (c < 1) throw ParseError(block[0].first, "city index must be positive");
        rec.phenotype.tour.push_back(static_cast<int>(c - 1));
    }
    if (rec.phenotype.tour.empty()) throw ParseError(block[0].first, "empty tour line");

    std::vector<long long> items;
    for (const auto& tok : tokens_of(block[1].second))
        items.push_back(to_int(tok, block[1].first, "item index"));

    auto objs = tokens_of(block[2].second);
    if (objs.size() != 2)
        throw ParseError(block[2].first, "objective line must be '<time> <profit>'");
    rec.eval.time = to_real(objs[0], block[2].first, "time");
    rec.eval.profit = to_int(objs[1], block[2].first, "profit");

    // Item count is unknown until the caller sizes the plan; store picks in
    // the plan as a growing bitmap over the max index seen.
    long long max_item = 0;
    for (long long it : items) {
        if (it < 1) throw ParseError(block[1].first, "item index must be positive");
        max_item = std::max(max_item, it);
    }
    rec.phenotype.plan.assign(static_cast<std::size_t>(max_item), 0);
    for (long long it : items) rec.phenotype.plan[static_cast<std::size_t>(it - 1)] = 1;
    return rec;
}

}  // namespace

std::string format_time(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", t);
    return buf;
}

void write_front_text(std::ostream& out, const FrontArchive& front) {
    for (const auto& point : front.points) {
        for (const auto& sol : point.solutions) {
            for (std::size_t i = 0; i < sol.tour.size(); ++i) {
                if (i) out << ' ';
                out << sol.tour[i] + 1;
            }
            out << '\n';
            bool first = true;
            for (std::size_t j = 0; j < sol.plan.size(); ++j) {
                if (!sol.plan[j]) continue;
                if (!first) out << ' ';
                out << j + 1;
                first = false;
            }
            out << '\n';
            out << format_time(point.eval.time) << ' ' << point.eval.profit << '\n';
            out << '\n';
        }
    }
}

std::vector<FrontRecord> read_front_text(std::istream& in) {
    std::vector<FrontRecord> records;
    std::vector<std::pair<int, std::string>> block;
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = line.find_first_not_of(" \t") == std::string::npos;
        // Blank lines separate records; inside a record they are data (a
        // solution that picks no items has an empty items line).
        if (blank && block.empty()) continue;
        block.emplace_back(line_no, line);
        if (block.size() == 3) {
            records.push_back(record_from_lines(block));
            block.clear();
        }
    }
    if (!block.empty()) records.push_back(record_from_lines(block));
    return records;
}

std::string front_to_json(const FrontArchive& front) {
    ordered_json arr = ordered_json::array();
    for (const auto& point : front.points) {
        for (const auto& sol : point.solutions) {
            ordered_json rec;
            ordered_json tour = ordered_json::array();
            for (int c : sol.tour) tour.push_back(c + 1);
            ordered_json items = ordered_json::array();
            for (std::size_t j = 0; j < sol.plan.size(); ++j)
                if (sol.plan[j]) items.push_back(j + 1);
            rec["tour"] = std::move(tour);
            rec["items"] = std::move(items);
            rec["time"] = point.eval.time;
            rec["profit"] = point.eval.profit;
            arr.push_back(std::move(rec));
        }
    }
    return arr.dump(2);
}

std::vector<FrontRecord> read_front_json(std::istream& in) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(0, std::string("invalid JSON front: ") + e.what());
    }
    const ordered_json* arr = nullptr;
    if (doc.is_array())
        arr = &doc;
    else if (doc.is_object() && doc.contains("front") && doc["front"].is_array())
        arr = &doc["front"];
    else
        throw ParseError(0, "JSON front must be an array or an object with a 'front' array");

    std::vector<FrontRecord> records;
    for (const auto& rec : *arr) {
        try {
            FrontRecord r;
            for (const auto& c : rec.at("tour")) r.phenotype.tour.push_back(c.get<int>() - 1);
            long long max_item = 0;
            std::vector<long long> items;
            for (const auto& j : rec.at("items")) {
                items.push_back(j.get<long long>());
                max_item = std::max(max_item, items.back());
            }
            r.phenotype.plan.assign(static_cast<std::size_t>(max_item), 0);
            for (long long j : items) {
                if (j < 1) throw ParseError(0, "item index must be positive");
                r.phenotype.plan[static_cast<std::size_t>(j - 1)] = 1;
            }
            r.eval.time = rec.at("time").get<double>();
            r.eval.profit = rec.at("profit").get<long long>();
            records.push_back(std::move(r));
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(0, std::string("invalid JSON front record: ") + e.what());
        }
    }
    return records;
}

std::vector<FrontRecord> read_front_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open front file: " + path);
    char c = 0;
    while (in.get(c) && std::isspace(static_cast<unsigned char>(c))) {
    }
    in.seekg(0);
    if (c == '{' || c == '[') return read_front_json(in);
    return read_front_text(in);
}

FrontArchive archive_from_records(const std::vector<FrontRecord>& records,
                                  std::size_t* dropped) {
    std::vector<Evaluation> evals;
    std::vector<Phenotype> phenotypes;
    evals.reserve(records.size());
    phenotypes.reserve(records.size());
    for (const auto& r : records) {
        evals.push_back(r.eval);
        phenotypes.push_back(r.phenotype);
    }
    FrontArchive front = make_front(evals, phenotypes);
    if (dropped != nullptr) {
        std::size_t kept = 0;
        for (const auto& p : front.points) kept += p.solutions.size();
        *dropped = records.size() - kept;
    }
    return front;
}

}  // namespace bittp
