#include "doctest.h"

#include "gdof/errors.hpp"
#include "gdof/generators.hpp"
#include "gdof/properties.hpp"
#include "gdof/tin_solver.hpp"
#include "oracles.hpp"

using namespace gdof;
using oracle::Q;

TEST_SUITE("tin_solver") {

TEST_CASE("3-user example: P-TIN over all users") {
    const auto p = ptin_sum(fig1_network(), {1, 2, 3});
    CHECK(p.value == Q(5, 2));
    CHECK(p.partition.str() == "{(1→2→3)}");
    CHECK(p.sls_certified);
    REQUIRE(p.certificate.lambdas.size() == 1);
    CHECK(p.certificate.lambdas[0].second == Q(1));
    CHECK(p.certificate.mode == CoverMode::equality);
}

TEST_CASE("cyclic network: P-TIN over all users equals K") {
    for (int k = 2; k <= 7; ++k) {
        CAPTURE(k);
        CHECK(ptin_sum(ctin_cyclic_network(k), all_users(k)).value == Q(k));
    }
}

TEST_CASE("all-ones pair: P-TIN is zero on both users") {
    const auto m = symmetric_network(2, Q(1));
    const auto p = ptin_sum(m, {1, 2});
    CHECK(p.value == Q(0));
    CHECK(p.partition.str() == "{(1→2)}");
    CHECK(ptin_sum(m, {1}).value == Q(1));
    CHECK_FALSE(check_non_monotone_witness().has_value());
}

TEST_CASE("ptin_sum matches brute-force partitions on SLS corpora") {
    for (int k = 2; k <= 5; ++k) {
        for (const auto& m : regime_corpus(k, Regime::sls, 30, 8)) {
            CAPTURE(m.name());
            for (const auto& s : oracle::subsets(k)) {
                const auto p = ptin_sum(m, s);
                CHECK(p.value == oracle::min_partition_delta(m, s));
                CHECK(partition_delta(m, p.partition) == p.value);
                CHECK(p.partition.ground_set() == s);
            }
        }
    }
}

TEST_CASE("ptin_sum rejects bad subsets") {
    const auto m = fig1_network();
    CHECK_THROWS_AS(ptin_sum(m, {}), ValidationError);
    CHECK_THROWS_AS(ptin_sum(m, {4}), ValidationError);
    CHECK_THROWS_AS(ptin_sum(m, {0, 1}), ValidationError);
}

TEST_CASE("oracle on the depth-2 tree") {
    const auto o = ptin_sum_oracle(tree_network(2, Q(1)), {1, 2, 3, 4});
    REQUIRE(o.feasible);
    CHECK(o.value == Q(1));
    CHECK(o.d.sum() == Q(1));
    CHECK(o.constraints == 15);
}

TEST_CASE("oracle on single users and the 3-user example") {
    const auto m = fig1_network();
    for (User k = 1; k <= 3; ++k) CHECK(ptin_sum_oracle(m, {k}).value == m.alpha(k, k));
    CHECK(ptin_sum_oracle(m, {1, 2, 3}).value == ptin_sum(m, {1, 2, 3}).value);
}

TEST_CASE("oracle reports infeasible cycle bounds and caps") {
    // Delta of (1->2) is 1 - 3 + 1 - 0 < 0
    const auto m = oracle::matrix({{Q(1), Q(0)}, {Q(3), Q(1)}});
    CHECK_FALSE(ptin_sum_oracle(m, {1, 2}).feasible);
    CHECK_THROWS_AS(ptin_sum_oracle(symmetric_network(9, Q(0)), all_users(9)), CapExceeded);
}

TEST_CASE("oracle LP optimum is attained and feasible") {
    for (int k = 2; k <= 4; ++k) {
        for (const auto& m : regime_corpus(k, Regime::strict_sls, 20, 4)) {
            const auto o = ptin_sum_oracle(m, all_users(k));
            CHECK(o.d.sum() == o.value);
            CHECK(ptin_check(m, all_users(k), o.d).feasible);
        }
    }
}

TEST_CASE("ptin_check verdicts") {
    const auto t = tree_network(2, Q(1));
    const auto bad = ptin_check(t, {1, 2, 3, 4}, GdofPoint({Q(1, 2), Q(1, 2), Q(1, 2), Q(1, 2)}));
    CHECK_FALSE(bad.feasible);
    REQUIRE(bad.violated.has_value());
    CHECK(*bad.violated == Cycle({1, 2}));
    CHECK(bad.bound == Q(1, 2));
    CHECK(bad.load == Q(1));
    CHECK(bad.slack == Q(-1, 2));

    CHECK(ptin_check(t, {1, 3}, GdofPoint({Q(1, 2), Q(0), Q(1, 2), Q(0)})).feasible);
    CHECK(ptin_check(fig1_network(), {1, 2, 3}, GdofPoint(3)).feasible);

    CHECK_THROWS_AS(ptin_check(t, {1, 3}, GdofPoint(3)), ValidationError);
    CHECK_THROWS_AS(ptin_check(t, {1, 3}, GdofPoint({Q(0), Q(1, 4), Q(0), Q(0)})), ValidationError);
    CHECK_THROWS_AS(ptin_check(t, {1, 3}, GdofPoint({Q(-1), Q(0), Q(0), Q(0)})), ValidationError);
}

TEST_CASE("TINA of the named networks") {
    const auto cyc = tina_sum(ctin_cyclic_network(3));
    CHECK(cyc.value == Q(3));
    CHECK(cyc.best_subset == UserSet{1});
    CHECK(cyc.certified);

    const auto ones = tina_sum(symmetric_network(2, Q(1)));
    CHECK(ones.value == Q(1));
    CHECK(ones.best_subset == UserSet{1});

    CHECK(tina_sum(fig1_network()).value == Q(5, 2));
    CHECK(tina_sum(half_cross_network(2)).value == Q(1));
}

TEST_CASE("TINA of the depth-2 tree is 5/4") {
    const auto m = tree_network(2, Q(1));
    const auto t = tina_sum(m);
    CHECK(t.value == Q(5, 4));
    CHECK(t.best_subset == UserSet{1, 2, 3});
    // independent witness: this tuple meets every cycle bound of {1,2,3}
    const GdofPoint d({Q(1, 4), Q(1, 4), Q(3, 4), Q(0)});
    CHECK(ptin_check(m, {1, 2, 3}, d).feasible);
    CHECK(d.sum() == Q(5, 4));
    CHECK(ptin_sum_oracle(m, {1, 2, 3}).value == Q(5, 4));
    CHECK(oracle::brute_tina(m) == Q(5, 4));
}

TEST_CASE("TINA matches brute force on SLS corpora") {
    for (int k = 2; k <= 5; ++k) {
        for (const auto& m : regime_corpus(k, Regime::sls, 25, 12)) {
            CAPTURE(m.name());
            CHECK(tina_sum(m).value == oracle::brute_tina(m));
        }
    }
}

TEST_CASE("TINA outside SLS uses the LP oracle") {
    const auto m = oracle::matrix({{Q(1), Q(0)}, {Q(3), Q(1)}});
    const auto t = tina_sum(m);
    CHECK_FALSE(t.certified);
    CHECK(t.value == Q(1));
}

TEST_CASE("oracle equivalence on strict SLS corpora") {
    for (int k = 2; k <= 5; ++k) {
        for (const auto& m : regime_corpus(k, Regime::strict_sls, 40, 21)) {
            CAPTURE(m.name());
            CHECK_FALSE(check_oracle_equivalence(m, 6, 77).has_value());
        }
    }
}

TEST_CASE("trivial-cycle merge keeps the value") {
    for (int k = 2; k <= 5; ++k) {
        for (const auto& m : regime_corpus(k, Regime::sls, 40, 2)) CHECK_FALSE(check_trivial_merge(m).has_value());
    }
}

TEST_CASE("complementary slackness between oracle and certificate") {
    for (int k = 2; k <= 5; ++k) {
        for (const auto& m : regime_corpus(k, Regime::strict_sls, 40, 13)) {
            CHECK_FALSE(check_complementary_slackness(m).has_value());
            CHECK_FALSE(check_partition_attainment(m).has_value());
        }
    }
}

TEST_CASE("assignment value dominates the LP outside SLS") {
    int outside = 0;
    for (std::size_t s = 0; s < 300; ++s) {
        const auto m = random_matrix(4, sample_seed(31, 4, 0, s));
        if (in_regime(m, Regime::sls)) continue;
        ++outside;
        CHECK_FALSE(check_upper_direction(m).has_value());
    }
    CHECK(outside > 100);
}

TEST_CASE("GdofPoint helpers") {
    GdofPoint d(3);
    d.at(2) = Q(1, 2);
    CHECK(d.sum() == Q(1, 2));
    CHECK(d.size() == 3);
}

}
