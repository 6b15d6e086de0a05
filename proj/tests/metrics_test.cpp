#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bittp/metrics.hpp"
#include "support/reference.hpp"
#include "support/ttp_text.hpp"

using namespace bittp;

namespace {

std::vector<Evaluation> front_evals(const FrontArchive& a) {
    std::vector<Evaluation> out;
    for (const FrontPoint& p : a.points) out.push_back(p.eval);
    return out;
}

std::vector<Evaluation> random_evals(std::mt19937_64& gen, int count, int grid) {
    // Small integer grid: plenty of exact ties and duplicates.
    std::vector<Evaluation> evals;
    for (int i = 0; i < count; ++i)
        evals.push_back(Evaluation{static_cast<double>(gen() % static_cast<unsigned>(grid)),
                                   static_cast<long long>(gen() % static_cast<unsigned>(grid))});
    return evals;
}

}  // namespace

TEST_CASE("pareto_filter keeps the non-dominated set, sorted and deduplicated") {
    std::vector<Evaluation> evals = {{5, 10}, {5, 10}, {3, 4}, {7, 12}, {4, 4}, {3, 9}, {6, 11}};
    FrontArchive a = pareto_filter(evals);
    CHECK(front_evals(a) == std::vector<Evaluation>{{3, 9}, {5, 10}, {6, 11}, {7, 12}});
    CHECK(a.bounds.time_min == doctest::Approx(3));
    CHECK(a.bounds.time_max == doctest::Approx(7));
    CHECK(a.bounds.profit_min == doctest::Approx(9));
    CHECK(a.bounds.profit_max == doctest::Approx(12));
    CHECK(a.ref.time == doctest::Approx(7));
    CHECK(a.ref.profit == 9);
}

TEST_CASE("pareto_filter matches brute force on random inputs") {
    std::mt19937_64 gen(41);
    for (int rep = 0; rep < 100; ++rep) {
        auto evals = random_evals(gen, 1 + static_cast<int>(gen() % 40), 8);
        FrontArchive a = pareto_filter(evals);
        CHECK(front_evals(a) == test::brute_force_front(evals));
        for (std::size_t i = 1; i < a.points.size(); ++i) {
            CHECK(a.points[i - 1].eval.time < a.points[i].eval.time);
            CHECK(a.points[i - 1].eval.profit < a.points[i].eval.profit);
        }
    }
}

TEST_CASE("make_front groups phenotypes by objective vector") {
    Phenotype pa{{0, 1, 2, 3}, {0, 0, 0}};
    Phenotype pb{{0, 3, 2, 1}, {0, 0, 0}};
    std::vector<Evaluation> evals = {{20, 0}, {20, 0}, {20, 0}, {25, 7}};
    std::vector<Phenotype> phenos = {pa, pb, pa, pb};  // pa repeated: dedup
    FrontArchive a = make_front(evals, phenos);
    REQUIRE(a.size() == 2);
    REQUIRE(a.points[0].solutions.size() == 2);
    CHECK(a.points[0].solutions[0] == pa);  // lexicographic order
    CHECK(a.points[0].solutions[1] == pb);
    CHECK(a.points[1].solutions.size() == 1);
}

TEST_CASE("hypervolume worked examples") {
    SUBCASE("single point") {
        FrontArchive a;
        a.points.push_back(FrontPoint{{0.25, 75}, {}});
        a.bounds = Bounds{0.0, 1.0, 0.0, 100.0};
        a.ref = Evaluation{1.0, 0};
        CHECK(hypervolume(a) == doctest::Approx(0.5625));  // 0.75 * 0.75
    }
    SUBCASE("three-step staircase") {
        FrontArchive a;
        a.points = {FrontPoint{{2, 4}, {}}, FrontPoint{{5, 7}, {}}, FrontPoint{{8, 9}, {}}};
        a.bounds = Bounds{0.0, 10.0, 0.0, 10.0};
        a.ref = Evaluation{10.0, 0};
        CHECK(hypervolume(a) == doctest::Approx(0.8 * 0.4 + 0.5 * 0.3 + 0.2 * 0.2));
    }
    SUBCASE("point at the reference corner adds nothing") {
        FrontArchive a;
        a.points = {FrontPoint{{10, 0}, {}}};
        a.bounds = Bounds{0.0, 10.0, 0.0, 10.0};
        a.ref = Evaluation{10.0, 0};
        CHECK(hypervolume(a) == doctest::Approx(0.0));
    }
    SUBCASE("empty front") { CHECK(hypervolume(FrontArchive{}) == 0.0); }
    SUBCASE("degenerate bounds normalize to zero") {
        FrontArchive a;
        a.points = {FrontPoint{{5, 7}, {}}};
        a.bounds = Bounds{0.0, 10.0, 7.0, 7.0};
        a.ref = Evaluation{10.0, 7};
        CHECK(hypervolume(a) == 0.0);
    }
    SUBCASE("member outside the reference box is a contract violation") {
        FrontArchive a;
        a.points = {FrontPoint{{11, 5}, {}}};
        a.bounds = Bounds{0.0, 10.0, 0.0, 10.0};
        a.ref = Evaluation{10.0, 0};
        CHECK_THROWS_AS((void)hypervolume(a), ContractError);
        a.points = {FrontPoint{{5, -1}, {}}};
        CHECK_THROWS_AS((void)hypervolume(a), ContractError);
    }
}

TEST_CASE("hypervolume grows when a front point improves") {
    FrontArchive a;
    a.points = {FrontPoint{{2, 4}, {}}, FrontPoint{{5, 7}, {}}};
    a.bounds = Bounds{0.0, 10.0, 0.0, 10.0};
    a.ref = Evaluation{10.0, 0};
    FrontArchive b = a;
    b.points[1].eval.profit = 9;
    CHECK(hypervolume(b) > hypervolume(a));
    FrontArchive c = a;
    c.points[0].eval.time = 1;
    CHECK(hypervolume(c) > hypervolume(a));
}

TEST_CASE("with_bounds overrides normalization") {
    std::vector<Evaluation> evals = {{2, 4}, {5, 7}};
    FrontArchive a = with_bounds(pareto_filter(evals), Bounds{0, 10, 0, 10}, Evaluation{10, 0});
    CHECK(a.bounds.time_max == doctest::Approx(10));
    CHECK(a.ref.time == doctest::Approx(10));
    CHECK(hypervolume(a) == doctest::Approx(0.8 * 0.4 + 0.5 * 0.3));
}

TEST_CASE("select_hv_subset matches exhaustive search") {
    std::mt19937_64 gen(53);
    for (int rep = 0; rep < 40; ++rep) {
        FrontArchive a = pareto_filter(random_evals(gen, 25, 12));
        if (a.size() < 2) continue;
        for (int q = 1; q <= static_cast<int>(a.size()); ++q) {
            FrontArchive sub = select_hv_subset(a, q);
            REQUIRE(sub.size() == static_cast<std::size_t>(q));
            CHECK(sub.bounds == a.bounds);
            CHECK(hypervolume(sub) == doctest::Approx(test::exhaustive_best_subset_hv(a, q)));
            // Members must be a subsequence of the input front.
            std::size_t cursor = 0;
            for (const FrontPoint& p : sub.points) {
                while (cursor < a.size() && !(a.points[cursor].eval == p.eval)) ++cursor;
                REQUIRE(cursor < a.size());
                ++cursor;
            }
        }
    }
}

TEST_CASE("select_hv_subset resolves exact ties toward smaller indices") {
    FrontArchive a;
    a.points = {FrontPoint{{1, 1}, {}}, FrontPoint{{3, 3}, {}}};
    a.bounds = Bounds{0, 4, 0, 4};
    a.ref = Evaluation{4, 0};
    FrontArchive sub = select_hv_subset(a, 1);
    REQUIRE(sub.size() == 1);
    CHECK(sub.points[0].eval == Evaluation{1, 1});
}

TEST_CASE("select_hv_subset validates q") {
    FrontArchive a = pareto_filter(std::vector<Evaluation>{{1, 1}, {2, 2}});
    CHECK_THROWS_AS((void)select_hv_subset(a, 0), ContractError);
    CHECK_THROWS_AS((void)select_hv_subset(a, 3), ContractError);
    CHECK(front_evals(select_hv_subset(a, 2)) == front_evals(a));
}

TEST_CASE("ttp_score subtracts rented time from profit") {
    Instance inst = Instance::example4();  // renting ratio 1.0
    CHECK(ttp_score(inst, {28.585293, 59}) == doctest::Approx(30.414707));
    CHECK(ttp_score(inst, {20.0, 0}) == doctest::Approx(-20.0));

    std::vector<std::array<double, 2>> coords = {{0, 0}, {3, 4}};
    Instance r2("r2", coords, {}, 0, 0.5, 1.0, 2.5);
    CHECK(ttp_score(r2, {10.0, 100}) == doctest::Approx(75.0));
}

TEST_CASE("accumulator reproduces batch filter and volume") {
    std::mt19937_64 gen(67);
    Bounds bounds{0, 20, 0, 20};
    Evaluation ref{20, 0};
    for (int rep = 0; rep < 60; ++rep) {
        auto evals = random_evals(gen, 1 + static_cast<int>(gen() % 50), 21);
        ParetoAccumulator acc(bounds, ref);
        double last_hv = 0.0;
        for (const Evaluation& e : evals) {
            acc.insert(e);
            CHECK(acc.hypervolume() >= last_hv);  // monotone, also in FP
            last_hv = acc.hypervolume();
        }
        CHECK(acc.front() == test::brute_force_front(evals));
        FrontArchive batch = with_bounds(pareto_filter(evals), bounds, ref);
        CHECK(acc.hypervolume() == doctest::Approx(hypervolume(batch)).epsilon(1e-12));
        CHECK(acc.size() == batch.size());
    }
}

TEST_CASE("accumulator insert return values") {
    ParetoAccumulator acc(Bounds{0, 10, 0, 10}, Evaluation{10, 0});
    CHECK(acc.insert({5, 5}));
    CHECK_FALSE(acc.insert({5, 5}));  // exact duplicate
    CHECK_FALSE(acc.insert({6, 4}));  // dominated
    CHECK_FALSE(acc.insert({6, 5}));  // dominated (same profit, slower)
    CHECK(acc.insert({5, 6}));        // replaces at equal time
    CHECK(acc.insert({3, 2}));        // incomparable
    CHECK(acc.insert({1, 1}));        // erases (3,2)? no: 2 > 1 -> coexists
    CHECK(acc.insert({2, 4}));        // erases (3,2)
    CHECK(acc.front() == std::vector<Evaluation>{{1, 1}, {2, 4}, {5, 6}});
}

TEST_CASE("accumulator keeps out-of-box points at zero contribution") {
    Bounds bounds{0, 1, 0, 10};
    ParetoAccumulator acc(bounds, Evaluation{1.0, 2});

    CHECK(acc.insert({2.0, 9}));  // beyond ref time: zero width
    CHECK(acc.hypervolume() == 0.0);
    CHECK(acc.insert({0.5, 1}));  // below ref profit: zero height
    CHECK(acc.hypervolume() == 0.0);
    CHECK(acc.size() == 2);

    CHECK(acc.insert({0.5, 6}));  // erases (0.5, 1); in-box
    // width = 1 - 0.5 = 0.5, height = 0.6 - 0.2 (ref profit 2) = 0.4
    CHECK(acc.hypervolume() == doctest::Approx(0.5 * 0.4));
    double before = acc.hypervolume();

    CHECK(acc.insert({0.25, 8}));  // dominates nothing erased? erases (0.5,6)
    CHECK(acc.hypervolume() >= before);
    CHECK(acc.hypervolume() == doctest::Approx(0.75 * 0.6));
    CHECK(acc.front() == std::vector<Evaluation>{{0.25, 8}, {2.0, 9}});
}

TEST_CASE("accumulator monotone under adversarial out-of-box mixes") {
    std::mt19937_64 gen(71);
    Bounds bounds{0, 10, 0, 10};
    ParetoAccumulator acc(bounds, Evaluation{8, 3});  // ref strictly inside bounds
    double last = 0.0;
    for (int i = 0; i < 2000; ++i) {
        double t = static_cast<double>(gen() % 160) / 10.0;  // up to 16 > ref
        long long p = static_cast<long long>(gen() % 12);    // down to 0 < ref
        acc.insert({t, p});
        REQUIRE(acc.hypervolume() >= last);
        last = acc.hypervolume();
    }
    CHECK(acc.hypervolume() <= 1.0 + 1e-12);
}
