// Acceptance gate: ten go/no-go checks (A1..A10) covering the evaluation
// model, the exhaustive reference front, solver optimality at desk scale,
// knapsack exactness, long-run elitism, sorting and subset-selection oracles,
// repair properties, crossover statistics, and end-to-end determinism.
//
// Prints exactly one "<id> PASS" or "<id> FAIL: ..." line per criterion and
// exits non-zero if any fails. Optional arguments select a subset by id
// (e.g. "acceptance_test A3 A10"). All tolerances and budgets are pinned in
// the constants below. Note: A5 drives a ten-minute solver run.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bittp/encoding.hpp"
#include "bittp/instance.hpp"
#include "bittp/metrics.hpp"
#include "bittp/model.hpp"
#include "bittp/moea.hpp"
#include "bittp/oracle.hpp"
#include "bittp/rng.hpp"
#include "bittp/subsolvers.hpp"
#include "front_io.hpp"
#include "support/reference.hpp"
#include "support/ttp_text.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// ---- pinned tolerances and budgets ----------------------------------------
constexpr double kA1ExpectedTime = 28.585;       // fixture tour [1,3,2,4], plan [1,0,1]
constexpr long long kA1ExpectedProfit = 59;
constexpr double kA1Tolerance = 0.01;
constexpr double kA1Budget_s = 0.001;            // a single evaluation, < 1 ms

constexpr double kA2Tolerance = 0.01;
constexpr double kA2Budget_s = 1.0;

constexpr int kA3Population = 100;
constexpr double kA3SeededFraction = 0.5;
constexpr long long kA3Generations = 200;
constexpr int kA3Seeds[] = {1, 2, 3, 4, 5};
constexpr double kA3BudgetPerRun_s = 10.0;

constexpr int kA4Instances = 100;
constexpr int kA4MaxItems = 18;
constexpr double kA4Budget_s = 30.0;

constexpr double kA5Runtime_s = 600.0;           // ten-minute seeded run
constexpr int kA5MinDistinctVectors = 50;

constexpr int kA6Populations = 200;
constexpr int kA6MaxSize = 200;
constexpr double kA6Budget_s = 10.0;

constexpr int kA7Fronts = 50;
constexpr int kA7MaxPoints = 10;
constexpr int kA7MaxSubset = 5;
constexpr double kA7Tolerance = 1e-12;
constexpr double kA7Budget_s = 5.0;

constexpr int kA8Genotypes = 10'000;             // per instance
constexpr double kA8Budget_s = 30.0;

constexpr long long kA9Draws = 100'000;
constexpr double kA9Biases[] = {0.5, 0.7, 0.8};
constexpr double kA9Tolerance = 0.01;
constexpr double kA9Budget_s = 5.0;

constexpr long long kA10Generations = 100;

// ---- plumbing --------------------------------------------------------------
struct Gate {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

fs::path scratch_root() {
    static fs::path root = [] {
        fs::path p = fs::temp_directory_path() /
                     ("bittp_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return root;
}

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    fs::path p = scratch_root() / (tag + "_" + std::to_string(counter++));
    fs::create_directories(p);
    return p;
}

std::string data_file(const std::string& name) {
    return (fs::path(BITTP_DATA_DIR) / name).string();
}

int run_cli(const std::string& args) {
    std::string cmd = "env -u BITTP_SEED " + std::string(BITTP_CLI) + " " + args +
                      " > /dev/null 2> /dev/null";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "<unreadable: " + path.string() + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// ---- criteria --------------------------------------------------------------
void a1(Gate& g) {
    bittp::Instance inst = bittp::parse_instance_file(data_file("example4.ttp"));
    const bittp::Tour tour = {0, 2, 1, 3};          // cities 1,3,2,4
    const bittp::PackingPlan plan = {1, 0, 1};
    (void)bittp::evaluate(inst, tour, plan);        // warm-up
    auto t0 = Clock::now();
    bittp::Evaluation e = bittp::evaluate(inst, tour, plan);
    double dt = seconds_since(t0);
    g.expect(std::abs(e.time - kA1ExpectedTime) <= kA1Tolerance,
             "time " + fmt(e.time) + " not within " + fmt(kA1Tolerance) + " of " +
                 fmt(kA1ExpectedTime));
    g.expect(e.profit == kA1ExpectedProfit,
             "profit " + std::to_string(e.profit) + " != " + std::to_string(kA1ExpectedProfit));
    g.expect(dt < kA1Budget_s, "evaluation took " + fmt(dt) + " s (budget " +
                                   fmt(kA1Budget_s) + " s)");
}

void a2(Gate& g) {
    bittp::Instance inst = bittp::parse_instance_file(data_file("example4.ttp"));
    auto t0 = Clock::now();
    bittp::FrontArchive front = bittp::enumerate_front(inst);
    double dt = seconds_since(t0);

    std::vector<bittp::Evaluation> rows;
    for (const auto& p : front.points)
        for (std::size_t i = 0; i < p.solutions.size(); ++i) rows.push_back(p.eval);

    const double times[] = {20.0, 20.0, 20.93, 22.04, 27.36, 28.59, 33.11, 38.91};
    const long long profits[] = {0, 0, 25, 34, 40, 59, 65, 74};
    g.expect(rows.size() == 8, "expected 8 front rows, got " + std::to_string(rows.size()));
    for (std::size_t i = 0; i < rows.size() && i < 8; ++i) {
        g.expect(rows[i].profit == profits[i],
                 "row " + std::to_string(i) + " profit " + std::to_string(rows[i].profit) +
                     " != " + std::to_string(profits[i]));
        g.expect(std::abs(rows[i].time - times[i]) <= kA2Tolerance,
                 "row " + std::to_string(i) + " time " + fmt(rows[i].time) + " not within " +
                     fmt(kA2Tolerance) + " of " + fmt(times[i]));
    }
    g.expect(dt < kA2Budget_s, "enumeration took " + fmt(dt) + " s");
}

void a3(Gate& g) {
    bittp::Instance inst = bittp::parse_instance_file(data_file("example4.ttp"));
    bittp::FrontArchive truth = bittp::enumerate_front(inst);

    bittp::SubsolverConfig sub;
    sub.tsp_budget_s = 0.05;
    for (int seed : kA3Seeds) {
        bittp::GaConfig cfg;
        cfg.population_size = kA3Population;
        cfg.elite_count = kA3Population / 2;
        cfg.mutant_count = kA3Population / 10;
        cfg.seeded_fraction = kA3SeededFraction;
        cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.max_generations = kA3Generations;

        auto t0 = Clock::now();
        bittp::FrontArchive got = bittp::run(inst, cfg, sub);
        double dt = seconds_since(t0);
        g.expect(dt < kA3BudgetPerRun_s,
                 "seed " + std::to_string(seed) + " took " + fmt(dt) + " s");

        bool same = got.size() == truth.size();
        for (std::size_t i = 0; same && i < truth.size(); ++i)
            same = got.points[i].eval.time == truth.points[i].eval.time &&
                   got.points[i].eval.profit == truth.points[i].eval.profit;
        g.expect(same, "seed " + std::to_string(seed) + " front has " +
                           std::to_string(got.size()) + " vectors, reference has " +
                           std::to_string(truth.size()) + (same ? "" : " (or values differ)"));
    }
}

void a4(Gate& g) {
    auto t0 = Clock::now();
    std::mt19937_64 gen(20'240'814);
    bittp::test::RandomInstanceOptions opt;
    opt.max_items = kA4MaxItems;
    int checked = 0;
    for (int i = 0; i < kA4Instances; ++i) {
        bittp::Instance inst = bittp::test::make_random_instance(gen, opt);
        bittp::SubsolverConfig sub;
        sub.delta = inst.capacity();  // delta = Q: fully exact
        bittp::PackingPlan plan = bittp::solve_kp_ghdp(inst, sub);
        long long got = bittp::plan_profit(inst, plan);
        long long want = bittp::test::brute_force_kp_profit(inst);
        if (got != want)
            g.expect(false, "instance " + std::to_string(i) + ": profit " +
                                std::to_string(got) + " != optimum " + std::to_string(want));
        ++checked;
    }
    g.expect(checked == kA4Instances, "ran " + std::to_string(checked) + " instances");
    double dt = seconds_since(t0);
    g.expect(dt < kA4Budget_s, "took " + fmt(dt) + " s");
}

void a5(Gate& g) {
    fs::path dir = fresh_dir("a5");
    std::string cmd = "solve --instance " + data_file("a280_n279.ttp") +
                      " --seed 42 --time " + fmt(kA5Runtime_s) +
                      " --hv-bounds 0,2000000,0,200000 --out " + dir.string();
    int code = run_cli(cmd);
    g.expect(code == 0, "solver exited with code " + std::to_string(code));
    if (code != 0) return;

    // Convergence log: the hv column must never decrease.
    std::ifstream conv(dir / "convergence.csv");
    std::string line;
    std::getline(conv, line);
    g.expect(line == "generation,elapsed_s,front_size,hv", "unexpected csv header: " + line);
    double prev_hv = -1.0;
    long long rows = 0, drops = 0;
    while (std::getline(conv, line)) {
        if (line.empty()) continue;
        long long gen_no = 0, size = 0;
        double elapsed = 0, hv = 0;
        if (std::sscanf(line.c_str(), "%lld,%lf,%lld,%lf", &gen_no, &elapsed, &size, &hv) != 4) {
            g.expect(false, "unparsable csv row: " + line);
            return;
        }
        if (hv < prev_hv) ++drops;
        prev_hv = hv;
        ++rows;
    }
    g.expect(rows >= 2, "only " + std::to_string(rows) + " generations logged");
    g.expect(drops == 0, std::to_string(drops) + " hypervolume decreases in " +
                             std::to_string(rows) + " rows");

    // Final front: at least kA5MinDistinctVectors distinct objective vectors.
    auto records = bittp::read_front_file((dir / "front.txt").string());
    std::set<std::pair<double, long long>> distinct;
    for (const auto& r : records) distinct.emplace(r.eval.time, r.eval.profit);
    g.expect(static_cast<int>(distinct.size()) >= kA5MinDistinctVectors,
             "final front has " + std::to_string(distinct.size()) +
                 " distinct objective vectors (need >= " +
                 std::to_string(kA5MinDistinctVectors) + ")");
}

void a6(Gate& g) {
    auto t0 = Clock::now();
    std::mt19937_64 gen(6);
    std::uniform_int_distribution<int> size_of(1, kA6MaxSize);
    std::uniform_int_distribution<int> coord(0, 40);  // small grid forces ties and duplicates
    for (int rep = 0; rep < kA6Populations; ++rep) {
        int n = size_of(gen);
        std::vector<bittp::Evaluation> evals(static_cast<std::size_t>(n));
        for (auto& e : evals) {
            e.time = static_cast<double>(coord(gen));
            e.profit = coord(gen);
        }
        auto got = bittp::nondominated_sort(evals);
        auto want = bittp::test::brute_force_fronts(evals);
        if (got != want) {
            g.expect(false, "population " + std::to_string(rep) + " (size " +
                                std::to_string(n) + ") partitions differ");
            return;
        }
    }
    double dt = seconds_since(t0);
    g.expect(dt < kA6Budget_s, "took " + fmt(dt) + " s");
}

void a7(Gate& g) {
    auto t0 = Clock::now();
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> coord(0, 1000);
    for (int rep = 0; rep < kA7Fronts; ++rep) {
        std::vector<bittp::Evaluation> evals(static_cast<std::size_t>(kA7MaxPoints));
        for (auto& e : evals) {
            e.time = static_cast<double>(coord(gen));
            e.profit = coord(gen);
        }
        bittp::FrontArchive front = bittp::pareto_filter(evals);
        int top_q = std::min<int>(kA7MaxSubset, static_cast<int>(front.size()));
        for (int q = 1; q <= top_q; ++q) {
            double got = bittp::hypervolume(bittp::select_hv_subset(front, q));
            double want = bittp::test::exhaustive_best_subset_hv(front, q);
            if (std::abs(got - want) > kA7Tolerance) {
                g.expect(false, "front " + std::to_string(rep) + ", q=" + std::to_string(q) +
                                    ": hv " + fmt(got) + " != best " + fmt(want));
                return;
            }
        }
    }
    double dt = seconds_since(t0);
    g.expect(dt < kA7Budget_s, "took " + fmt(dt) + " s");
}

void a8(Gate& g) {
    auto t0 = Clock::now();
    std::mt19937_64 gen(8);
    const std::string names[] = {"example4.ttp", "a280_n279.ttp"};
    for (const std::string& name : names) {
        bittp::Instance inst = bittp::parse_instance_file(data_file(name));
        const std::size_t len = bittp::genotype_length(inst);
        long long bad_weight = 0, not_idempotent = 0, tour_changed = 0;
        for (int rep = 0; rep < kA8Genotypes; ++rep) {
            bittp::Genotype raw(len);
            for (double& k : raw) k = static_cast<double>(gen() >> 11) * 0x1.0p-53;
            bittp::Genotype repaired = bittp::repair(inst, raw);
            bittp::Phenotype ph = bittp::decode(inst, repaired);
            if (bittp::plan_weight(inst, ph.plan) > inst.capacity()) ++bad_weight;
            if (bittp::repair(inst, repaired) != repaired) ++not_idempotent;
            if (bittp::decode(inst, raw).tour != ph.tour) ++tour_changed;
        }
        g.expect(bad_weight == 0, name + ": " + std::to_string(bad_weight) + " overweight");
        g.expect(not_idempotent == 0,
                 name + ": " + std::to_string(not_idempotent) + " non-idempotent repairs");
        g.expect(tour_changed == 0,
                 name + ": " + std::to_string(tour_changed) + " repairs changed the tour");
    }
    double dt = seconds_since(t0);
    g.expect(dt < kA8Budget_s, "took " + fmt(dt) + " s");
}

void a9(Gate& g) {
    auto t0 = Clock::now();
    const std::size_t len = 1000;
    const bittp::Genotype elite(len, 1.0), other(len, 0.0);
    for (double bias : kA9Biases) {
        bittp::Rng rng(90'000 + static_cast<std::uint64_t>(bias * 100));
        long long from_elite = 0, total = 0;
        while (total < kA9Draws) {
            bittp::Genotype child = bittp::biased_crossover(elite, other, bias, rng);
            for (double k : child) from_elite += (k == 1.0);
            total += static_cast<long long>(len);
        }
        double freq = static_cast<double>(from_elite) / static_cast<double>(total);
        g.expect(std::abs(freq - bias) <= kA9Tolerance,
                 "bias " + fmt(bias) + ": inheritance frequency " + fmt(freq));
    }
    double dt = seconds_since(t0);
    g.expect(dt < kA9Budget_s, "took " + fmt(dt) + " s");
}

void a10(Gate& g) {
    struct Case {
        const char* name;
        std::string instance;
        std::string tsp_budget;
    };
    const Case cases[] = {{"fixture", data_file("example4.ttp"), "0.05"},
                          {"a280_n279", data_file("a280_n279.ttp"), "0.5"}};
    for (const Case& c : cases) {
        fs::path first = fresh_dir(std::string("a10_") + c.name + "_1");
        fs::path second = fresh_dir(std::string("a10_") + c.name + "_2");
        std::string args = "solve --instance " + c.instance +
                           " --N 100 --Ne 0.5 --Nm 0.1 --seed 11 --generations " +
                           std::to_string(kA10Generations) + " --tsp-budget " + c.tsp_budget;
        int c1 = run_cli(args + " --out " + first.string());
        int c2 = run_cli(args + " --out " + second.string());
        g.expect(c1 == 0 && c2 == 0, std::string(c.name) + ": solver exited " +
                                         std::to_string(c1) + "/" + std::to_string(c2));
        if (c1 != 0 || c2 != 0) continue;
        g.expect(slurp(first / "front.txt") == slurp(second / "front.txt"),
                 std::string(c.name) + ": front files differ between identical runs");
        g.expect(slurp(first / "manifest.json") == slurp(second / "manifest.json"),
                 std::string(c.name) + ": manifests differ between identical runs");
    }
}

struct Criterion {
    const char* id;
    void (*fn)(Gate&);
};

const Criterion kCriteria[] = {{"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
                               {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}};

}  // namespace

int main(int argc, char** argv) {
    std::set<std::string> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(argv[i]);

    bool all_ok = true;
    for (const Criterion& c : kCriteria) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        Gate gate;
        try {
            c.fn(gate);
        } catch (const std::exception& e) {
            gate.failures.push_back(std::string("unhandled exception: ") + e.what());
        }
        if (gate.failures.empty()) {
            std::printf("%s PASS\n", c.id);
        } else {
            all_ok = false;
            std::string detail = gate.failures[0];
            for (std::size_t i = 1; i < gate.failures.size() && i < 3; ++i)
                detail += "; " + gate.failures[i];
            if (gate.failures.size() > 3)
                detail += "; (+" + std::to_string(gate.failures.size() - 3) + " more)";
            std::printf("%s FAIL: %s\n", c.id, detail.c_str());
        }
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
