#include <doctest.h>

#include <cmath>

#include "facloc/core.hpp"
#include "facloc/io.hpp"
#include "facloc/solvers.hpp"
#include "test_util.hpp"

using namespace facloc;
using facloc_test::make_instance;
using facloc_test::random_instance;
using facloc_test::small_metric_instance;

TEST_CASE("total_cost single star") {
    Instance inst = make_instance({5}, {{3}});
    Solution sol;
    sol.open = {0};
    sol.assign = {{0}};
    sol.facility_cost = 5;
    sol.connection_cost = 3;
    CHECK(total_cost(inst, sol) == doctest::Approx(8).epsilon(1e-12));
}

TEST_CASE("total_cost penalty-only solution") {
    Instance inst = make_instance({4}, {{1, 1, 1}});
    inst.penalty = {2, 2, 2};
    Solution sol;
    sol.assign = {{}, {}, {}};
    sol.penalty_cost = 6;
    CHECK(total_cost(inst, sol) == doctest::Approx(6).epsilon(1e-12));
}

TEST_CASE("total_cost equals dual sum on a cap-style instance") {
    Instance inst = parse_orlib(facloc_test::cap_style_text());
    SolverOutput out = greedy2(inst);
    double sum = 0.0;
    for (int j = 0; j < inst.n_c; ++j) sum += inst.d(j) * out.cert.alpha[j];
    double cost = total_cost(inst, out.solution);
    CHECK(cost == doctest::Approx(sum).epsilon(1e-6));
    CHECK(cost == doctest::Approx(out.solution.total()).epsilon(1e-9));
}

TEST_CASE("total_cost validates facility indices") {
    Instance inst = make_instance({5}, {{3}});
    Solution sol;
    sol.open = {1};
    sol.assign = {{0}};
    CHECK_THROWS_AS(total_cost(inst, sol), std::out_of_range);
}

TEST_CASE("total_cost is pure") {
    Instance inst = random_instance(4, 7, 123);
    SolverOutput out = greedy1_restatement(inst);
    double a = total_cost(inst, out.solution);
    double b = total_cost(inst, out.solution);
    CHECK(a == b);  // bit-identical
}

TEST_CASE("check_metric on grid instances") {
    CHECK(check_metric(small_metric_instance(5, 9, 42)));
}

TEST_CASE("check_metric counterexample") {
    Instance inst = make_instance({0, 0}, {{1, 10}, {1, 1}});
    CHECK_FALSE(check_metric(inst));
}

TEST_CASE("check_overtight zero dual") {
    Instance inst = make_instance({3, 7}, {{1, 2}, {2, 1}});
    DualCertificate cert{{0, 0}, 1.0};
    auto s = check_overtight(inst, cert);
    CHECK(s[0] == doctest::Approx(3));
    CHECK(s[1] == doctest::Approx(7));
    CHECK(overtight_feasible(s));
}

TEST_CASE("check_overtight equality case") {
    Instance inst = make_instance({1}, {{0, 0}});
    DualCertificate cert{{1, 1}, 2.0};
    auto s = check_overtight(inst, cert);
    CHECK(s[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(overtight_feasible(s));
}

TEST_CASE("check_overtight rejects bad gamma") {
    Instance inst = make_instance({1}, {{0}});
    CHECK_THROWS_AS(check_overtight(inst, DualCertificate{{1}, 0.0}), ParamError);
    CHECK_THROWS_AS(check_overtight(inst, DualCertificate{{1, 1}, 1.0}), ParamError);
}

TEST_CASE("greedy1 duals shrunk by 1.861 fit random grid instances") {
    for (int t = 0; t < 50; ++t) {
        Instance inst = small_metric_instance(4 + t % 4, 8 + t % 5, 1000 + t);
        SolverOutput out = greedy1_restatement(inst);
        DualCertificate cert = out.cert;
        cert.gamma = 1.861;
        CHECK(overtight_feasible(check_overtight(inst, cert), 1e-6));
    }
}

TEST_CASE("brute force: single facility") {
    Instance inst = make_instance({5}, {{3}});
    Solution sol = brute_force_opt(inst);
    CHECK(sol.open == std::vector<int>{0});
    CHECK(sol.total() == doctest::Approx(8));
}

TEST_CASE("brute force dominates greedy2") {
    for (int t = 0; t < 10; ++t) {
        Instance inst = random_instance(6, 8, 500 + t);
        double opt = brute_force_opt(inst).total();
        double g2 = greedy2(inst).solution.total();
        CHECK(opt <= g2 + 1e-9 * (1 + g2));
    }
}

TEST_CASE("brute force refuses large instances") {
    Instance inst;
    inst.n_f = 21;
    inst.n_c = 1;
    inst.open_cost.assign(21, 1.0);
    inst.conn.assign(21, 1.0);
    CHECK_THROWS_AS(brute_force_opt(inst), ParamError);
}

TEST_CASE("brute force lexicographic tie-break") {
    // facilities 0 and 1 are interchangeable; the tie goes to facility 0
    Instance inst = make_instance({2, 2}, {{1, 1}, {1, 1}});
    Solution sol = brute_force_opt(inst);
    CHECK(sol.open == std::vector<int>{0});
}
