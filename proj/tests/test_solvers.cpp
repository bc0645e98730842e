#include <doctest.h>

#include <cmath>
#include <set>

#include "facloc/core.hpp"
#include "facloc/solvers.hpp"
#include "test_util.hpp"

using namespace facloc;
using facloc_test::make_instance;
using facloc_test::random_instance;
using facloc_test::small_metric_instance;

namespace {

double alpha_sum(const Instance& inst, const SolverOutput& out) {
    double s = 0.0;
    for (int j = 0; j < inst.n_c; ++j) s += inst.d(j) * out.cert.alpha[j];
    return s;
}

// Replays a greedy2 trace and checks that no unopened facility ever holds
// offers beyond its opening cost (executable form of the offer-cap rule).
void check_offer_cap(const Instance& inst, const EventTrace& trace, double tol = 1e-6) {
    std::vector<char> open(inst.n_f, 0);
    std::vector<int> sigma(inst.n_c, -1);
    for (const Event& ev : trace.events) {
        double t = ev.time;
        for (int i = 0; i < inst.n_f; ++i) {
            if (open[i]) continue;
            double sum = 0.0;
            for (int j = 0; j < inst.n_c; ++j) {
                if (sigma[j] < 0) sum += inst.d(j) * std::max(t - inst.c(i, j), 0.0);
                else sum += inst.d(j) * std::max(inst.c(sigma[j], j) - inst.c(i, j), 0.0);
            }
            CHECK(sum <= inst.open_cost[i] + tol);
        }
        if (ev.kind == EventKind::FacilityOpened) open[ev.facility] = 1;
        else if (ev.kind == EventKind::CityConnected) sigma[ev.city] = ev.facility;
    }
}

}  // namespace

TEST_CASE("greedy1_star: lone facility with two cities") {
    Instance inst = make_instance({2}, {{1, 1}});
    SolverOutput out = greedy1_star(inst);
    CHECK(out.solution.open == std::vector<int>{0});
    CHECK(out.solution.total() == doctest::Approx(4));
    CHECK(out.cert.alpha[0] == doctest::Approx(2));
    CHECK(out.cert.alpha[1] == doctest::Approx(2));
}

TEST_CASE("greedy1_star: picks the cheaper ratio") {
    Instance inst = make_instance({0, 10}, {{5}, {0}});
    SolverOutput out = greedy1_star(inst);
    CHECK(out.solution.open == std::vector<int>{0});
    CHECK(out.solution.total() == doctest::Approx(5));
}

TEST_CASE("greedy1_restatement: single opening event") {
    Instance inst = make_instance({5}, {{3}});
    SolverOutput out = greedy1_restatement(inst);
    CHECK(out.solution.total() == doctest::Approx(8));
    CHECK(out.cert.alpha[0] == doctest::Approx(8));
    CHECK(out.events == 1);
    REQUIRE(out.trace.events.size() == 2);
    CHECK(out.trace.events[0].kind == EventKind::FacilityOpened);
    CHECK(out.trace.events[0].time == doctest::Approx(8));
}

TEST_CASE("greedy1_restatement: free facility opens at time zero") {
    Instance inst = make_instance({0}, {{3}});
    SolverOutput out = greedy1_restatement(inst);
    CHECK(out.cert.alpha[0] == doctest::Approx(3));
    REQUIRE(out.trace.events.size() == 2);
    CHECK(out.trace.events[0].kind == EventKind::FacilityOpened);
    CHECK(out.trace.events[0].time == doctest::Approx(0));
    CHECK(out.trace.events[1].kind == EventKind::CityConnected);
    CHECK(out.trace.events[1].time == doctest::Approx(3));
}

TEST_CASE("greedy1 star and restatement agree on a metric instance") {
    Instance inst = small_metric_instance(10, 20, 77);
    SolverOutput a = greedy1_star(inst);
    SolverOutput b = greedy1_restatement(inst);
    CHECK(a.solution.total() == doctest::Approx(b.solution.total()).epsilon(1e-6));
}

TEST_CASE("greedy1 equivalence on 200 continuous random instances") {
    for (int t = 0; t < 200; ++t) {
        Instance inst = random_instance(3 + t % 6, 4 + t % 9, 31000 + t, 0.01, 10.0);
        SolverOutput a = greedy1_star(inst);
        SolverOutput b = greedy1_restatement(inst);
        REQUIRE(a.solution.open == b.solution.open);
        REQUIRE(a.solution.assign == b.solution.assign);
        REQUIRE(a.solution.total() == doctest::Approx(b.solution.total()).epsilon(1e-6));
    }
}

TEST_CASE("dual sum equals cost for both greedy algorithms") {
    for (int t = 0; t < 40; ++t) {
        Instance inst = t % 2 ? small_metric_instance(5 + t % 5, 9 + t % 7, 600 + t)
                              : random_instance(4 + t % 5, 6 + t % 6, 600 + t);
        for (auto* solve : {&greedy1_restatement, &greedy2}) {
            SolverOutput out = solve(inst);
            CHECK(out.solution.total() ==
                  doctest::Approx(alpha_sum(inst, out)).epsilon(1e-6));
        }
    }
}

TEST_CASE("greedy2: lone star") {
    Instance inst = make_instance({5}, {{3}});
    SolverOutput out = greedy2(inst);
    CHECK(out.cert.alpha[0] == doctest::Approx(8));
    CHECK(out.solution.total() == doctest::Approx(8));
}

TEST_CASE("greedy2: cheap far facility opens first, switch offers stay short") {
    // facility 0 (f=4) at distance 1 from both cities, facility 1 (f=1) at
    // distance 2: offers 2(t-2) pay facility 1 at t=2.5; the switch savings
    // toward facility 0 never reach 4
    Instance inst = make_instance({4, 1}, {{1, 1}, {2, 2}});
    SolverOutput out = greedy2(inst);
    CHECK(out.solution.open == std::vector<int>{1});
    CHECK(out.cert.alpha[0] == doctest::Approx(2.5));
    CHECK(out.cert.alpha[1] == doctest::Approx(2.5));
    CHECK(out.solution.total() == doctest::Approx(5));
}

TEST_CASE("greedy2 trace: reconnections strictly improve") {
    int reconnections = 0;
    for (int t = 0; t < 60; ++t) {
        Instance inst = small_metric_instance(6 + t % 4, 10 + t % 8, 8800 + t);
        SolverOutput out = greedy2(inst);
        std::vector<double> cur(inst.n_c, -1.0);
        for (const Event& ev : out.trace.events) {
            if (ev.kind != EventKind::CityConnected) continue;
            double cost = inst.c(ev.facility, ev.city);
            if (cur[ev.city] >= 0) {
                CHECK(cost < cur[ev.city]);
                ++reconnections;
            }
            cur[ev.city] = cost;
        }
    }
    CHECK(reconnections > 0);  // the property must actually get exercised
}

TEST_CASE("greedy2 trace: offers never exceed opening costs") {
    for (int t = 0; t < 10; ++t) {
        Instance inst = small_metric_instance(6, 12, 910 + t);
        SolverOutput out = greedy2(inst);
        check_offer_cap(inst, out.trace);
    }
}

TEST_CASE("event traces are time-sorted and short") {
    for (int t = 0; t < 20; ++t) {
        Instance inst = random_instance(5, 9, 17000 + t);
        for (auto* solve : {&greedy1_star, &greedy1_restatement, &greedy2}) {
            SolverOutput out = solve(inst);
            double last = 0.0;
            for (const Event& ev : out.trace.events) {
                CHECK(ev.time >= last - 1e-9);
                last = std::max(last, ev.time);
            }
            CHECK(out.events <= inst.n_c + inst.n_f);
        }
    }
}

TEST_CASE("jv: lone star") {
    Instance inst = make_instance({5}, {{3}});
    SolverOutput out = jv(inst);
    CHECK(out.solution.total() == doctest::Approx(8));
}

TEST_CASE("jv stays feasible and above the optimum") {
    for (int t = 0; t < 10; ++t) {
        Instance inst = random_instance(6, 8, 2600 + t);
        SolverOutput out = jv(inst);
        for (int j = 0; j < inst.n_c; ++j) REQUIRE(out.solution.assign[j].size() == 1);
        double opt = brute_force_opt(inst).total();
        CHECK(out.solution.total() >= opt - 1e-9 * (1 + opt));
        CHECK(total_cost(inst, out.solution) ==
              doctest::Approx(out.solution.total()).epsilon(1e-9));
    }
}

TEST_CASE("jv never beats greedy2 on grid batches") {
    double jv_sum = 0.0, g2_sum = 0.0;
    for (int t = 0; t < 12; ++t) {
        Instance inst = small_metric_instance(10, 40, 5100 + t, 10000, 9999);
        jv_sum += jv(inst).solution.total();
        g2_sum += greedy2(inst).solution.total();
    }
    CHECK(jv_sum >= g2_sum - 1e-6);
}
