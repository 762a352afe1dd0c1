#include "doctest.h"

#include "gdof/errors.hpp"
#include "gdof/generators.hpp"
#include "gdof/serialize.hpp"
#include "oracles.hpp"

using namespace gdof;
using oracle::Q;

TEST_SUITE("serialize") {

TEST_CASE("network text round-trips") {
    for (const auto& m : {fig1_network(), tree_network(2, Q(1)), ctin_cyclic_network(5), half_cross_network(3)}) {
        const auto back = parse_network(network_to_text(m));
        CHECK(back == m);
        CHECK(back.name() == m.name());
    }
}

TEST_CASE("network JSON uses strings for exact values") {
    const auto j = network_to_json(fig1_network());
    CHECK(j["K"] == 3);
    CHECK(j["alpha"][0][1] == "1/5");
    CHECK(j["name"] == "fig1");
}

TEST_CASE("decimal annotation sits next to the exact value") {
    json j = json::object();
    put_rational(j, "v", Q(5, 3), JsonOptions{true});
    CHECK(j["v"] == "5/3");
    CHECK(j["v_decimal"] == "1.666667");
    json k = json::object();
    put_rational(k, "v", Q(5, 3), JsonOptions{});
    CHECK_FALSE(k.contains("v_decimal"));
}

TEST_CASE("scheme JSON round-trips") {
    for (const auto& s : {ctin_bc_scheme(3), tree_bc_scheme(2), symmetric_bc_scheme(3, Q(1, 3))}) {
        const auto back = parse_scheme(scheme_json(s).dump());
        CHECK(scheme_json(back) == scheme_json(s));
        CHECK(back.messages.size() == s.messages.size());
        CHECK(back.decode_order == s.decode_order);
    }
}

TEST_CASE("scheme parser errors") {
    CHECK_THROWS_AS(parse_scheme("nope"), ParseError);
    CHECK_THROWS_AS(parse_scheme("{}"), ParseError);
    CHECK_THROWS_AS(parse_scheme(R"({"messages":[{"id":"a","antennas":[1],"power":0,"gdof":"1","audience":[1]}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scheme(R"({"messages":[],"decode_order":{"x":[]}})"), ParseError);
    CHECK_THROWS_AS(parse_scheme(R"({"messages":[{"id":"a","antennas":["1"],"power":"0","gdof":"1","audience":[1]}]})"),
                    ParseError);
}

TEST_CASE("GDoF tuples parse from comma lists") {
    const auto d = parse_gdof_point("1/2,0,0.25");
    CHECK(d.d == std::vector<Rational>{Q(1, 2), Q(0), Q(1, 4)});
    CHECK_THROWS_AS(parse_gdof_point("1,,2"), ParseError);
}

TEST_CASE("report payloads carry exact values") {
    const auto m = fig1_network();
    const auto p = ptin_json(ptin_sum(m, {1, 2, 3}));
    CHECK(p["value"] == "5/2");
    CHECK(p["partition"] == "{(1→2→3)}");
    CHECK(p["lambdas"][0][0] == "(1→2→3)");
    CHECK(p["cover_mode"] == "equality");

    const auto b = bound_json(iterative_bound(tree_network(2, Q(1))));
    CHECK(b["method"] == "iterative");
    CHECK(b["stages"] == 1);
    CHECK(b["trace"][0]["N"] == 2);

    const auto r = regime_json(classify(ctin_cyclic_network(3)));
    CHECK(r["in_tin"] == false);
    CHECK(r["violations"][0]["triple"] == json::array({1, 3, 2}));
    CHECK(r["quantifier_reading"] == "i not in {j,k}; j = k admitted");
}

TEST_CASE("serialization is deterministic") {
    const auto m = tree_network(3, Q(1));
    CHECK(bound_json(bc_sum_upper(m)).dump() == bound_json(bc_sum_upper(m)).dump());
    CHECK(tina_json(tina_sum(m)).dump() == tina_json(tina_sum(m)).dump());
}

}
