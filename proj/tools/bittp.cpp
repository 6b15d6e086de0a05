#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bittp/errors.hpp"
#include "bittp/instance.hpp"
#include "bittp/metrics.hpp"
#include "bittp/moea.hpp"
#include "bittp/oracle.hpp"
#include "bittp/subsolvers.hpp"
#include "front_io.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct HvBounds {
    bittp::Bounds bounds;
    bittp::Evaluation ref;
};

// "--hv-bounds fmin,fmax,gmin,gmax"; the reference point is the worst corner
// (fmax, gmin).
HvBounds parse_hv_bounds(const std::string& text) {
    std::array<double, 4> v{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        std::size_t comma = i < 3 ? text.find(',', pos) : text.size();
        if (comma == std::string::npos)
            throw std::invalid_argument("--hv-bounds needs 'fmin,fmax,gmin,gmax'");
        try {
            v[static_cast<std::size_t>(i)] = std::stod(text.substr(pos, comma - pos));
        } catch (const std::exception&) {
            throw std::invalid_argument("--hv-bounds needs 4 numbers: 'fmin,fmax,gmin,gmax'");
        }
        pos = comma + 1;
    }
    if (!(v[0] <= v[1]) || !(v[2] <= v[3]))
        throw std::invalid_argument("--hv-bounds must satisfy fmin <= fmax and gmin <= gmax");
    HvBounds hb;
    hb.bounds = bittp::Bounds{v[0], v[1], v[2], v[3]};
    hb.ref = bittp::Evaluation{v[1], static_cast<long long>(std::floor(v[2]))};
    return hb;
}

// --Ne/--Nm accept a fraction of N (value below 1) or an absolute count.
int resolve_count(double value, int population, const char* what) {
    double resolved = value < 1.0 ? value * population : value;
    long long count = std::llround(resolved);
    if (count < 0 || count > population)
        throw std::invalid_argument(std::string(what) + " resolves outside [0, N]");
    return static_cast<int>(count);
}

std::uint64_t seed_from_env_or_flag(const CLI::Option* seed_opt, std::uint64_t flag_value) {
    if (seed_opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("BITTP_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("BITTP_SEED is not an unsigned integer");
        }
    }
    return flag_value;
}

ordered_json bounds_json(const HvBounds& hb) {
    ordered_json j;
    j["time_min"] = hb.bounds.time_min;
    j["time_max"] = hb.bounds.time_max;
    j["profit_min"] = hb.bounds.profit_min;
    j["profit_max"] = hb.bounds.profit_max;
    return j;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void write_front_file(const fs::path& path, const bittp::FrontArchive& front,
                      const std::string& format, const ordered_json* manifest) {
    if (format == "json") {
        ordered_json doc;
        if (manifest != nullptr) doc["manifest"] = *manifest;
        doc["front"] = ordered_json::parse(bittp::front_to_json(front));
        write_text_file(path, doc.dump(2) + "\n");
    } else {
        std::ostringstream ss;
        bittp::write_front_text(ss, front);
        write_text_file(path, ss.str());
    }
}

int cmd_solve(const std::string& instance_path, bittp::GaConfig cfg, bittp::SubsolverConfig sub,
              const std::optional<std::string>& external_tour,
              const std::optional<HvBounds>& pinned, const std::string& out_dir,
              const std::string& format) {
    bittp::Instance inst = bittp::parse_instance_file(instance_path);
    if (external_tour) sub.external_tour = bittp::load_tour_file(inst, *external_tour);
    bittp::validate(cfg);
    bittp::validate(sub, inst);

    fs::create_directories(out_dir);
    const fs::path front_path = fs::path(out_dir) / (format == "json" ? "front.json" : "front.txt");
    const fs::path conv_path = fs::path(out_dir) / "convergence.csv";
    const fs::path manifest_path = fs::path(out_dir) / "manifest.json";

    std::ofstream conv(conv_path, std::ios::binary);
    if (!conv) throw std::runtime_error("cannot write " + conv_path.string());
    conv << "generation,elapsed_s,front_size,hv\n";

    // The log tracks a cumulative archive of every front point seen so far;
    // its running hypervolume never decreases. Without pinned bounds the
    // generation-0 front supplies them.
    std::optional<HvBounds> used_bounds = pinned;
    std::optional<bittp::ParetoAccumulator> acc;
    if (used_bounds) acc.emplace(used_bounds->bounds, used_bounds->ref);

    auto on_generation = [&](const bittp::GenerationStats& stats) {
        if (!acc) {
            bittp::Bounds b;
            b.time_min = stats.front.front().time;
            b.time_max = stats.front.back().time;
            b.profit_min = static_cast<double>(stats.front.front().profit);
            b.profit_max = static_cast<double>(stats.front.back().profit);
            used_bounds = HvBounds{b, bittp::Evaluation{b.time_max,
                                                        static_cast<long long>(b.profit_min)}};
            acc.emplace(used_bounds->bounds, used_bounds->ref);
        }
        for (const auto& e : stats.front) acc->insert(e);
        char hv_buf[64];
        std::snprintf(hv_buf, sizeof hv_buf, "%.9f", acc->hypervolume());
        char el_buf[64];
        std::snprintf(el_buf, sizeof el_buf, "%.3f", stats.elapsed_s);
        conv << stats.generation << ',' << el_buf << ',' << acc->size() << ',' << hv_buf << '\n';
    };

    bittp::FrontArchive front = bittp::run(inst, cfg, sub, on_generation);
    if (used_bounds) front = bittp::with_bounds(std::move(front), used_bounds->bounds,
                                                used_bounds->ref);
    conv.close();

    ordered_json manifest;
    manifest["command"] = "solve";
    manifest["instance"] = {{"path", instance_path},
                            {"name", inst.name()},
                            {"cities", inst.num_cities()},
                            {"items", inst.num_items()},
                            {"capacity", inst.capacity()}};
    manifest["parameters"] = {{"N", cfg.population_size},
                              {"Ne", cfg.elite_count},
                              {"Nm", cfg.mutant_count},
                              {"rho_e", cfg.elite_bias},
                              {"alpha", cfg.seeded_fraction},
                              {"omega", cfg.exploit_period},
                              {"tsp_budget_s", sub.tsp_budget_s},
                              {"delta", sub.delta},
                              {"external_tour",
                               external_tour ? ordered_json(*external_tour) : ordered_json(nullptr)},
                              {"workers", cfg.workers}};
    manifest["stop"] = {{"generations", cfg.max_generations ? ordered_json(*cfg.max_generations)
                                                            : ordered_json(nullptr)},
                        {"time_s", cfg.time_limit_s ? ordered_json(*cfg.time_limit_s)
                                                    : ordered_json(nullptr)}};
    manifest["seed"] = cfg.seed;
    manifest["format"] = format;
    manifest["hv_bounds"] = used_bounds ? bounds_json(*used_bounds) : ordered_json(nullptr);
    manifest["outputs"] = {{"front", front_path.filename().string()},
                           {"convergence", conv_path.filename().string()},
                           {"manifest", manifest_path.filename().string()}};

    write_front_file(front_path, front, format, &manifest);
    write_text_file(manifest_path, manifest.dump(2) + "\n");

    std::size_t rows = 0;
    for (const auto& p : front.points) rows += p.solutions.size();
    double hv = acc ? acc->hypervolume() : 0.0;
    std::cout << "front points: " << front.size() << " (" << rows << " solutions)\n"
              << "archive hv: " << hv << "\n"
              << "wrote " << front_path.string() << ", " << conv_path.string() << ", "
              << manifest_path.string() << "\n";
    return 0;
}

int cmd_oracle(const std::string& instance_path, std::uint64_t max_states,
               const std::string& out_dir, const std::string& format) {
    bittp::Instance inst = bittp::parse_instance_file(instance_path);
    bittp::OracleLimits limits;
    limits.max_states = max_states;
    bittp::FrontArchive front = bittp::enumerate_front(inst, limits);

    fs::create_directories(out_dir);
    const fs::path front_path = fs::path(out_dir) / (format == "json" ? "front.json" : "front.txt");
    ordered_json manifest;
    manifest["command"] = "oracle";
    manifest["instance"] = instance_path;
    manifest["max_states"] = max_states;
    write_front_file(front_path, front, format, &manifest);

    std::size_t rows = 0;
    for (const auto& p : front.points) rows += p.solutions.size();
    std::cout << "front points: " << front.size() << " (" << rows << " solutions)\n"
              << "wrote " << front_path.string() << "\n";
    return 0;
}

int cmd_hv(const std::string& front_path, const std::optional<std::string>& instance_path,
           const std::optional<HvBounds>& pinned) {
    std::vector<bittp::FrontRecord> records = bittp::read_front_file(front_path);
    if (records.empty()) throw bittp::ParseError(0, "front file has no records");

    if (instance_path) {
        bittp::Instance inst = bittp::parse_instance_file(*instance_path);
        for (auto& rec : records) {
            if (rec.phenotype.plan.size() > static_cast<std::size_t>(inst.num_items()))
                throw bittp::ContractError("front record references an item beyond the instance");
            rec.phenotype.plan.resize(static_cast<std::size_t>(inst.num_items()), 0);
            bittp::Evaluation re = bittp::evaluate(inst, rec.phenotype.tour, rec.phenotype.plan);
            if (std::abs(re.time - rec.eval.time) > 2e-6 || re.profit != rec.eval.profit)
                throw bittp::ContractError(
                    "front record objectives drift from re-evaluation: stored (" +
                    bittp::format_time(rec.eval.time) + ", " + std::to_string(rec.eval.profit) +
                    ") vs (" + bittp::format_time(re.time) + ", " + std::to_string(re.profit) +
                    ")");
            rec.eval = re;
        }
    }

    std::size_t dropped = 0;
    bittp::FrontArchive front = bittp::archive_from_records(records, &dropped);
    if (dropped > 0)
        std::cerr << "note: " << dropped << " dominated/duplicate record(s) ignored\n";
    if (pinned) front = bittp::with_bounds(std::move(front), pinned->bounds, pinned->ref);

    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", bittp::hypervolume(front));
    std::cout << "points " << front.size() << "\n"
              << "bounds " << front.bounds.time_min << ' ' << front.bounds.time_max << ' '
              << front.bounds.profit_min << ' ' << front.bounds.profit_max << "\n"
              << "hv " << buf << "\n";
    return 0;
}

int cmd_truncate(const std::string& front_path, int q, const std::string& out_path,
                 const std::optional<HvBounds>& pinned, const std::string& format) {
    std::vector<bittp::FrontRecord> records = bittp::read_front_file(front_path);
    bittp::FrontArchive front = bittp::archive_from_records(records);
    if (pinned) front = bittp::with_bounds(std::move(front), pinned->bounds, pinned->ref);

    bittp::FrontArchive kept = q >= static_cast<int>(front.size())
                                   ? front
                                   : bittp::select_hv_subset(front, q);

    ordered_json manifest;
    manifest["command"] = "truncate";
    manifest["source"] = front_path;
    manifest["q"] = q;
    write_front_file(out_path, kept, format, &manifest);

    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", bittp::hypervolume(kept));
    std::cout << "points " << kept.size() << "\n"
              << "hv " << buf << "\n"
              << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bittp: bi-objective traveling-thief solver and scoring tools"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "run the evolutionary solver");
    std::string instance_path, out_dir = ".", format = "text", hv_bounds_text, external_tour_path;
    double ne_value = 0.5, nm_value = 0.1;
    bittp::GaConfig cfg;
    bittp::SubsolverConfig sub;
    std::uint64_t seed_flag = 0;
    double time_limit = 0;
    long long generations = 0;
    solve->add_option("--instance", instance_path, "instance file")->required();
    solve->add_option("--N", cfg.population_size, "population size (default 500)");
    solve->add_option("--Ne", ne_value, "elite count: fraction of N if < 1 (default 0.5)");
    solve->add_option("--Nm", nm_value, "mutant count: fraction of N if < 1 (default 0.1)");
    solve->add_option("--rho-e", cfg.elite_bias, "elite key bias in [0.5, 1) (default 0.7)");
    solve->add_option("--alpha", cfg.seeded_fraction, "seeded share of the start population (default 0.2)");
    solve->add_option("--omega", cfg.exploit_period, "generations between local-search phases (default 50)");
    solve->add_option("--tsp-budget", sub.tsp_budget_s, "tour improvement budget, seconds (default 5)");
    solve->add_option("--delta", sub.delta, "knapsack DP window (default 50000)");
    solve->add_option("--external-tour", external_tour_path, "1-based tour file to use instead of the heuristic");
    auto* seed_opt = solve->add_option("--seed", seed_flag, "RNG seed (overrides BITTP_SEED; default 0)");
    auto* time_opt = solve->add_option("--time", time_limit, "stop after this many seconds");
    auto* gen_opt = solve->add_option("--generations", generations, "stop after this many generations");
    solve->add_option("--workers", cfg.workers, "evaluation threads (default 1)");
    solve->add_option("--out", out_dir, "output directory (default .)");
    solve->add_option("--format", format, "front file format: text|json (default text)")
        ->check(CLI::IsMember({"text", "json"}));
    solve->add_option("--hv-bounds", hv_bounds_text, "pinned bounds 'fmin,fmax,gmin,gmax' for the convergence log");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exhaustively enumerate the exact front (tiny instances)");
    std::string oracle_instance, oracle_out = ".", oracle_format = "text";
    std::uint64_t max_states = 1'000'000;
    oracle->add_option("--instance", oracle_instance, "instance file")->required();
    oracle->add_option("--max-states", max_states, "state cap for (n-1)! * 2^m (default 1e6)");
    oracle->add_option("--out", oracle_out, "output directory (default .)");
    oracle->add_option("--format", oracle_format, "front file format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // hv
    auto* hv = app.add_subcommand("hv", "score a front file (optionally re-validating against an instance)");
    std::string hv_front, hv_instance, hv_bounds_text2;
    auto* hv_inst_opt = hv->add_option("--instance", hv_instance, "instance for re-evaluating records");
    hv->add_option("--front", hv_front, "front file (text or json)")->required();
    hv->add_option("--hv-bounds", hv_bounds_text2, "pinned bounds 'fmin,fmax,gmin,gmax'");

    // truncate
    auto* truncate = app.add_subcommand("truncate", "keep the hypervolume-maximal q-subset of a front file");
    std::string tr_front, tr_out, tr_bounds_text, tr_format = "text";
    int tr_q = 0;
    truncate->add_option("--front", tr_front, "front file (text or json)")->required();
    truncate->add_option("--q", tr_q, "subset size")->required();
    truncate->add_option("--out", tr_out, "output file")->required();
    truncate->add_option("--hv-bounds", tr_bounds_text, "pinned bounds 'fmin,fmax,gmin,gmax'");
    truncate->add_option("--format", tr_format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // 0 for --help, 1 for usage errors
    }

    try {
        if (solve->parsed()) {
            cfg.elite_count = resolve_count(ne_value, cfg.population_size, "--Ne");
            cfg.mutant_count = resolve_count(nm_value, cfg.population_size, "--Nm");
            cfg.seed = seed_from_env_or_flag(seed_opt, seed_flag);
            if (gen_opt->count() > 0) cfg.max_generations = generations;
            if (time_opt->count() > 0) cfg.time_limit_s = time_limit;
            if (!cfg.max_generations && !cfg.time_limit_s) cfg.max_generations = 1000;
            std::optional<HvBounds> pinned;
            if (!hv_bounds_text.empty()) pinned = parse_hv_bounds(hv_bounds_text);
            std::optional<std::string> ext;
            if (!external_tour_path.empty()) ext = external_tour_path;
            return cmd_solve(instance_path, cfg, sub, ext, pinned, out_dir, format);
        }
        if (oracle->parsed()) return cmd_oracle(oracle_instance, max_states, oracle_out, oracle_format);
        if (hv->parsed()) {
            std::optional<HvBounds> pinned;
            if (!hv_bounds_text2.empty()) pinned = parse_hv_bounds(hv_bounds_text2);
            std::optional<std::string> inst_path;
            if (hv_inst_opt->count() > 0) inst_path = hv_instance;
            return cmd_hv(hv_front, inst_path, pinned);
        }
        if (truncate->parsed()) {
            std::optional<HvBounds> pinned;
            if (!tr_bounds_text.empty()) pinned = parse_hv_bounds(tr_bounds_text);
            return cmd_truncate(tr_front, tr_q, tr_out, pinned, tr_format);
        }
    } catch (const bittp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bittp::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
