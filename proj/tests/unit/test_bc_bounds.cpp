#include "doctest.h"

#include "gdof/bc_bounds.hpp"
#include "gdof/errors.hpp"
#include "gdof/generators.hpp"
#include "gdof/properties.hpp"
#include "oracles.hpp"

using namespace gdof;
using oracle::Q;

TEST_SUITE("bc_bounds") {

TEST_CASE("cycle bounds on the 3-user example") {
    const auto m = fig1_network();
    CHECK(bc_cycle_bound(m, Cycle({1, 2, 3})) == Q(3));
    CHECK(bc_cycle_bound(m, Cycle({1, 2})) == Q(5, 2));
    CHECK(bc_cycle_bound(m, Cycle({1, 3})) == Q(5, 2));
    CHECK(bc_cycle_bound(m, Cycle({2, 3})) == Q(2));
    for (User k = 1; k <= 3; ++k) CHECK(bc_cycle_bound(m, Cycle({k})) == m.alpha(k, k));
}

TEST_CASE("cycle bound on the cyclic network is 2K-1") {
    for (int k = 2; k <= 8; ++k) {
        std::vector<User> order(all_users(k));
        CHECK(bc_cycle_bound(ctin_cyclic_network(k), Cycle(order)) == Q(2 * k - 1));
    }
}

TEST_CASE("partition bounds") {
    const auto m = fig1_network();
    CHECK(bc_partition_bound(m, parse_partition("{(1->2->3)}")) == Q(3));
    CHECK(bc_partition_bound(m, parse_partition("{(1),(2->3)}")) == Q(4));
    CHECK(bc_partition_bound(half_cross_network(2), parse_partition("{(1->2)}")) == Q(3, 2));
    CHECK_THROWS_AS(bc_partition_bound(m, parse_partition("{(1->2)}")), ValidationError);
}

TEST_CASE("bounds refuse outside SLS") {
    const auto m = oracle::matrix({{Q(1), Q(2)}, {Q(0), Q(1)}});
    CHECK_THROWS_AS(bc_cycle_bound(m, Cycle({1, 2})), RegimeRefusal);
    CHECK_THROWS_AS(bc_sum_upper(m), RegimeRefusal);
    CHECK_THROWS_AS(iterative_bound(m), RegimeRefusal);
    CHECK_THROWS_AS(ratio_report(m), RegimeRefusal);
}

TEST_CASE("bc_sum_upper on named networks") {
    const auto cyc = bc_sum_upper(ctin_cyclic_network(3));
    CHECK(cyc.value == Q(5));
    CHECK(cyc.method == BoundMethod::partition);
    REQUIRE(std::holds_alternative<CyclicPartition>(cyc.witness));
    CHECK(std::get<CyclicPartition>(cyc.witness).str() == "{(1→2→3)}");

    CHECK(bc_sum_upper(tree_network(2, Q(1))).value == Q(2));
    CHECK(bc_sum_upper(fig1_network()).value == Q(3));
    CHECK(bc_sum_upper(half_cross_network(2)).value == Q(3, 2));
}

TEST_CASE("bc_sum_upper equals the brute-force partition minimum for small K") {
    for (int k = 2; k <= 5; ++k) {
        for (const auto& m : regime_corpus(k, Regime::sls, 30, 19)) {
            CAPTURE(m.name());
            CHECK(bc_sum_upper(m).value == oracle::brute_bc_partition_min(m));
        }
    }
}

TEST_CASE("iterative procedure on small networks") {
    const auto cyc = iterative_bound(ctin_cyclic_network(3));
    CHECK(cyc.value == Q(6));
    REQUIRE(cyc.trace.size() == 1);
    CHECK(cyc.trace[0].partition.str() == "{(1→2→3)}");
    CHECK(cyc.trace[0].cycles == 1);
    CHECK(cyc.tina == Q(3));

    const auto half = iterative_bound(half_cross_network(2));
    CHECK(half.value == Q(2));

    const auto one = iterative_bound(oracle::matrix({{Q(7, 3)}}));
    CHECK(one.value == Q(7, 3));
    CHECK(one.trace.size() == 1);
}

TEST_CASE("iterative procedure on the depth-4 tree halves the cycles each stage") {
    const auto r = iterative_bound(tree_network(4, Q(1)));
    REQUIRE(r.trace.size() == 4);
    const int expected[] = {8, 4, 2, 1};
    for (std::size_t s = 0; s < 4; ++s) CHECK(r.trace[s].cycles == expected[s]);
    CHECK(r.trace.back().combined.cycles().size() == 1);
    CHECK(r.trace.back().combined.cycles()[0].length() == 16);
    CHECK(r.value == r.trace.back().delta_sum + *r.tina);
    CHECK(*r.chain_bound == Q(5) * *r.tina);
}

TEST_CASE("iterative traces respect the stage bounds") {
    for (int k = 2; k <= 7; ++k) {
        for (const auto& m : regime_corpus(k, Regime::sls, 20, 4)) {
            CAPTURE(m.name());
            const auto obs = observe_ratio(m, Regime::sls);
            CHECK_FALSE(obs.failure.has_value());
        }
    }
}

TEST_CASE("Hamiltonian scan is used past the exhaustive cap") {
    const auto r = bc_sum_upper(tree_network(4, Q(1)));
    CHECK(r.value == Q(3));
    CHECK(r.method == BoundMethod::hamiltonian_scan);
}

TEST_CASE("ratio reports") {
    const auto c = ratio_report(ctin_cyclic_network(4));
    CHECK(c.upper == Q(7, 4));
    CHECK_FALSE(c.lower.has_value());

    const auto scheme = ctin_bc_scheme(4);
    const auto cs = ratio_report(ctin_cyclic_network(4), &scheme);
    REQUIRE(cs.lower.has_value());
    CHECK(*cs.lower == Q(7, 4));

    const auto half_scheme = symmetric_bc_scheme(2, Q(1, 2));
    const auto h = ratio_report(half_cross_network(2), &half_scheme);
    CHECK(h.upper == Q(3, 2));
    CHECK(*h.lower == Q(3, 2));

    const auto tree_scheme = tree_bc_scheme(3);
    const auto t = ratio_report(tree_network(3, Q(1)), &tree_scheme);
    CHECK(t.tina == Q(11, 8));
    REQUIRE(t.lower.has_value());
    CHECK(*t.lower == Q(20, 11));
    CHECK(*t.lower >= Q(5, 4));

    CHECK_THROWS_AS(ratio_report(oracle::matrix({{Q(0)}})), ValidationError);
}

TEST_CASE("a scheme that fails leaves the lower bound empty") {
    auto s = ctin_bc_scheme(3);
    s.messages[0].gdof = Q(3);
    const auto r = ratio_report(ctin_cyclic_network(3), &s);
    REQUIRE(r.scheme.has_value());
    CHECK_FALSE(r.scheme->ok);
    CHECK_FALSE(r.lower.has_value());
}

TEST_CASE("method names round-trip") {
    for (auto m : {BoundMethod::cycle, BoundMethod::partition, BoundMethod::iterative, BoundMethod::hamiltonian_scan}) {
        CHECK(method_from_name(method_name(m)) == m);
    }
    CHECK(method_name(BoundMethod::hamiltonian_scan) == "hamiltonian-scan");
}

}
