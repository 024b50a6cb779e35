#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "abrp/allocation.hpp"
#include "abrp/geometry.hpp"

using namespace abrp;

namespace {

// Closed depot tour length for a visit order, recomputed independently.
double closed_length(const Instance& inst, const std::vector<int>& order) {
    double len = 0.0;
    Point prev = inst.depot;
    for (int id : order) {
        const Point& p = inst.nodes[static_cast<std::size_t>(id - 1)];
        len += dist(prev, p);
        prev = p;
    }
    len += dist(prev, inst.depot);
    return len;
}

// Shortest closed tour by checking every permutation of the subset.
double exhaustive_tour_length(const Instance& inst, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    double best = std::numeric_limits<double>::infinity();
    do {
        best = std::min(best, closed_length(inst, subset));
    } while (std::next_permutation(subset.begin(), subset.end()));
    return best;
}

Instance unit_square_corners() {
    Instance inst;
    inst.n = 4;
    inst.area = 1.0;
    inst.depot = {0.5, 0.5};
    inst.nodes = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    inst.params.kappa = inst.beta * std::sqrt(inst.area);
    return inst;
}

}  // namespace

TEST_CASE("instance generation is deterministic and supported on the square") {
    const Instance a = generate_instance(5, 1.0, 7);
    const Instance b = generate_instance(5, 1.0, 7);
    REQUIRE(a.nodes.size() == 5);
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i].x == b.nodes[i].x);
        CHECK(a.nodes[i].y == b.nodes[i].y);
    }
    CHECK(a.depot.x == 0.5);
    CHECK(a.depot.y == 0.5);
    CHECK(a.params.kappa == doctest::Approx(0.72).epsilon(1e-15));

    const Instance big = generate_instance(1000, 1.0, 12345);
    for (const Point& p : big.nodes) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 1.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 1.0);
    }

    const Instance wide = generate_instance(50, 4.0, 9);
    CHECK(wide.depot.x == 1.0);
    CHECK(wide.depot.y == 1.0);
    CHECK(wide.params.kappa == doctest::Approx(0.72 * 2.0).epsilon(1e-15));
    for (const Point& p : wide.nodes) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 2.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 2.0);
    }
}

TEST_CASE("instance generation validates its arguments") {
    CHECK_THROWS_AS(generate_instance(0, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(5, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(5, 1.0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance(5, 1.0, 1, std::nullopt, SatisfactionParams{}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("mean nearest-neighbor spacing matches the uniform-point statistic") {
    const Instance inst = generate_instance(10000, 1.0, 424242);
    const std::size_t n = inst.nodes.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            best = std::min(best, dist(inst.nodes[i], inst.nodes[j]));
        }
        total += best;
    }
    const double mean = total / static_cast<double>(n);
    const double expected = 0.5 / std::sqrt(static_cast<double>(n));
    CHECK(mean == doctest::Approx(expected).epsilon(0.10));
}

TEST_CASE("tour-length estimate scales as the square root") {
    CHECK(bhh_estimate(0.0, 1.0) == 0.0);
    CHECK(bhh_estimate(100.0, 1.0) == doctest::Approx(7.2).epsilon(1e-15));
    CHECK(bhh_estimate(400.0, 2.5, 0.8) == 2.0 * bhh_estimate(100.0, 2.5, 0.8));
}

TEST_CASE("single-customer tours go out and back") {
    const Instance inst = generate_instance(6, 1.0, 3);
    const Tour t = build_tour(inst, {4});
    REQUIRE(t.sequence == std::vector<int>{4});
    CHECK(t.length ==
          doctest::Approx(2.0 * dist(inst.depot, inst.nodes[3])).epsilon(1e-14));
}

TEST_CASE("an empty subset yields an empty tour") {
    const Instance inst = generate_instance(3, 1.0, 3);
    const Tour t = build_tour(inst, {});
    CHECK(t.sequence.empty());
    CHECK(t.length == 0.0);
}

TEST_CASE("corner tour matches the exhaustive permutation oracle") {
    const Instance inst = unit_square_corners();
    const Tour t = build_tour(inst, {1, 2, 3, 4});
    CHECK(t.length == doctest::Approx(3.0 + std::sqrt(2.0)).epsilon(1e-13));
    CHECK(t.length ==
          doctest::Approx(exhaustive_tour_length(inst, {1, 2, 3, 4})).epsilon(1e-13));
    CHECK(closed_length(inst, t.sequence) == doctest::Approx(t.length).epsilon(1e-13));
}

TEST_CASE("small exact tours beat every permutation") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const Instance inst = generate_instance(8, 1.0, seed);
        std::vector<int> all(8);
        std::iota(all.begin(), all.end(), 1);
        const Tour t = build_tour(inst, all);
        CAPTURE(seed);
        CHECK(t.length ==
              doctest::Approx(exhaustive_tour_length(inst, all)).epsilon(1e-12));
        CHECK(closed_length(inst, t.sequence) == doctest::Approx(t.length).epsilon(1e-12));
    }
}

TEST_CASE("the exact tour never trails a greedy construction") {
    const Instance inst = generate_instance(12, 1.0, 77);
    std::vector<int> all(12);
    std::iota(all.begin(), all.end(), 1);
    const Tour exact = build_tour(inst, all);

    // Nearest-neighbor construction from the depot, done by hand here.
    std::vector<int> remaining = all;
    std::vector<int> greedy;
    Point at = inst.depot;
    while (!remaining.empty()) {
        std::size_t pick = 0;
        for (std::size_t i = 1; i < remaining.size(); ++i) {
            if (dist(at, inst.nodes[static_cast<std::size_t>(remaining[i] - 1)]) <
                dist(at, inst.nodes[static_cast<std::size_t>(remaining[pick] - 1)])) {
                pick = i;
            }
        }
        greedy.push_back(remaining[pick]);
        at = inst.nodes[static_cast<std::size_t>(remaining[pick] - 1)];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    CHECK(exact.length <= closed_length(inst, greedy) + 1e-12);
}

TEST_CASE("build_tour validates subset ids") {
    const Instance inst = generate_instance(5, 1.0, 3);
    CHECK_THROWS_AS(build_tour(inst, {0}), std::invalid_argument);
    CHECK_THROWS_AS(build_tour(inst, {6}), std::invalid_argument);
    CHECK_THROWS_AS(build_tour(inst, {2, 2}), std::invalid_argument);
}

TEST_CASE("large tours admit no improving exchange") {
    for (std::uint64_t seed : {5ULL, 6ULL}) {
        const Instance inst = generate_instance(40, 1.0, seed);
        std::vector<int> all(40);
        std::iota(all.begin(), all.end(), 1);
        const Tour t = build_tour(inst, all);
        CHECK(closed_length(inst, t.sequence) == doctest::Approx(t.length).epsilon(1e-12));

        // Walk every pair of edges; reversing any segment must not shorten the
        // tour beyond rounding.
        std::vector<Point> pts;
        pts.push_back(inst.depot);
        for (int id : t.sequence) pts.push_back(inst.nodes[static_cast<std::size_t>(id - 1)]);
        pts.push_back(inst.depot);
        const std::size_t m = pts.size();
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < m; ++i) {
            for (std::size_t j = i + 1; j + 1 < m; ++j) {
                const double delta = dist(pts[i - 1], pts[j]) + dist(pts[i], pts[j + 1]) -
                                     dist(pts[i - 1], pts[i]) - dist(pts[j], pts[j + 1]);
                worst = std::min(worst, delta);
            }
        }
        CAPTURE(seed);
        CHECK(worst >= -1e-10);
    }
}

TEST_CASE("realization serves consecutive blocks and prices them by arrival") {
    const Instance inst = generate_instance(30, 1.0, 21);
    IntAllocation alloc = gr_heuristic(30);
    const RealizedPlan plan = realize(inst, alloc);

    REQUIRE(plan.routes.size() == alloc.sizes.size());
    int next_id = 1;
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        CHECK(plan.routes[k].size() == static_cast<std::size_t>(alloc.sizes[k]));
        // Consecutive ids: route k serves exactly the next block.
        std::vector<int> sorted = plan.routes[k];
        std::sort(sorted.begin(), sorted.end());
        for (int id : sorted) CHECK(id == next_id++);
    }
    CHECK(next_id == 31);

    REQUIRE(plan.completion_times.size() == plan.tour_durations.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < plan.tour_durations.size(); ++k) {
        acc += plan.tour_durations[k];
        CHECK(plan.completion_times[k] == doctest::Approx(acc).epsilon(1e-12));
    }

    // Every rider's arrival equals their route's completion time, and the
    // objective equals sum_k n_k * (a - b * T_k).
    REQUIRE(plan.arrival.size() == 30);
    double expected_objective = 0.0;
    for (std::size_t k = 0; k < plan.routes.size(); ++k) {
        for (int id : plan.routes[k]) {
            CHECK(plan.arrival[static_cast<std::size_t>(id - 1)] ==
                  plan.completion_times[k]);
        }
        expected_objective +=
            static_cast<double>(alloc.sizes[k]) *
            (inst.params.a - inst.params.b * plan.completion_times[k]);
    }
    CHECK(plan.objective == doctest::Approx(expected_objective).epsilon(1e-9));
}

TEST_CASE("single-rider realization prices the out-and-back trip") {
    const Instance inst = generate_instance(1, 1.0, 99);
    IntAllocation alloc;
    alloc.sizes = {1};
    const RealizedPlan plan = realize(inst, alloc);
    const double d = dist(inst.depot, inst.nodes[0]);
    CHECK(plan.objective ==
          doctest::Approx(inst.params.a - inst.params.b * 2.0 * d).epsilon(1e-12));
}

TEST_CASE("realization rejects infeasible allocations") {
    const Instance inst = generate_instance(9, 1.0, 5, 4);
    IntAllocation wrong_sum;
    wrong_sum.sizes = {5, 5};
    CHECK_THROWS_AS(realize(inst, wrong_sum), std::invalid_argument);
    IntAllocation too_big;
    too_big.sizes = {5, 4};
    CHECK_THROWS_AS(realize(inst, too_big), std::invalid_argument);
    IntAllocation ok;
    ok.sizes = {4, 4, 1};
    CHECK_NOTHROW(realize(inst, ok));
}

TEST_CASE("realization is deterministic") {
    const Instance inst = generate_instance(25, 1.0, 8);
    const IntAllocation alloc = gr_heuristic(25);
    const RealizedPlan p1 = realize(inst, alloc);
    const RealizedPlan p2 = realize(inst, alloc);
    CHECK(p1.objective == p2.objective);
    CHECK(p1.routes == p2.routes);
    CHECK(p1.completion_times == p2.completion_times);
}

TEST_CASE("realized plans track the square-root estimate") {
    // Averaged over 50 seeds at N=100, the realized objective stays within 8%
    // of the closed-form satisfaction with kappa = beta * sqrt(area).
    const long long N = 100;
    const IntAllocation alloc = gr_heuristic(N);
    double total_rel = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const Instance inst = generate_instance(static_cast<int>(N), 1.0, seed);
        const RealizedPlan plan = realize(inst, alloc);
        const double predicted = satisfaction(alloc, inst.params);
        total_rel += std::fabs(plan.objective - predicted) / std::fabs(predicted);
    }
    CHECK(total_rel / 50.0 < 0.08);
}

TEST_CASE("two symmetric riders ride separately") {
    Instance inst;
    inst.n = 2;
    inst.area = 1.0;
    inst.depot = {0.5, 0.5};
    inst.nodes = {{0.25, 0.5}, {0.75, 0.5}};
    inst.params.kappa = inst.beta;

    // One shared route costs 2 * (1 - 0.01 * 1.0) = 1.98; splitting serves the
    // first rider at 0.5 and the second at 1.0 for 0.995 + 0.99 = 1.985.
    for (bool fairness : {true, false}) {
        const RealizedPlan plan = brute_force_abrp(inst, fairness);
        CAPTURE(fairness);
        CHECK(plan.objective == doctest::Approx(1.985).epsilon(1e-12));
        REQUIRE(plan.routes.size() == 2);
        CHECK(plan.routes[0].size() == 1);
        CHECK(plan.routes[1].size() == 1);
    }
}

TEST_CASE("service order constraint can only lower the optimum") {
    const Instance inst = generate_instance(5, 1.0, 3);
    const RealizedPlan on = brute_force_abrp(inst, true);
    const RealizedPlan off = brute_force_abrp(inst, false);
    CHECK(on.objective <= off.objective + 1e-12);
}

TEST_CASE("unrestricted optima respect the size-time exchange rule") {
    // In an optimal unrestricted plan, a route that finishes earlier never
    // carries fewer-or-equal riders at a strictly longer tour.
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        const Instance inst = generate_instance(7, 1.0, seed);
        const RealizedPlan plan = brute_force_abrp(inst, false);
        CAPTURE(seed);
        for (std::size_t k = 0; k < plan.routes.size(); ++k) {
            for (std::size_t h = k + 1; h < plan.routes.size(); ++h) {
                const bool violates = plan.routes[k].size() <= plan.routes[h].size() &&
                                      plan.tour_durations[k] > plan.tour_durations[h] + 1e-12;
                CHECK_FALSE(violates);
            }
        }
    }
}

TEST_CASE("ordered exhaustive search matches a composition scan") {
    const Instance inst = generate_instance(4, 1.0, 5);
    const RealizedPlan best = brute_force_abrp(inst, true);

    // Enumerate all 8 compositions of 4 by hand and realize each.
    double scan_best = -std::numeric_limits<double>::infinity();
    const std::vector<std::vector<long long>> comps = {
        {4}, {3, 1}, {1, 3}, {2, 2}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}, {1, 1, 1, 1}};
    for (const std::vector<long long>& sizes : comps) {
        IntAllocation alloc;
        alloc.sizes = sizes;
        scan_best = std::max(scan_best, realize(inst, alloc).objective);
    }
    CHECK(best.objective == doctest::Approx(scan_best).epsilon(1e-12));

    // The winning plan realizes to the same objective.
    IntAllocation winner;
    for (const std::vector<int>& route : best.routes) {
        winner.sizes.push_back(static_cast<long long>(route.size()));
    }
    CHECK(realize(inst, winner).objective == doctest::Approx(best.objective).epsilon(1e-12));
}

TEST_CASE("exhaustive search rejects oversized instances") {
    const Instance inst = generate_instance(10, 1.0, 1);
    CHECK_THROWS_AS(brute_force_abrp(inst, true), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_abrp(inst, false), std::invalid_argument);
}
