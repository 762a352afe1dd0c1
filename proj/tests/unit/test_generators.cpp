#include "doctest.h"

#include "gdof/errors.hpp"
#include "gdof/generators.hpp"
#include "gdof/properties.hpp"
#include "gdof/tin_solver.hpp"
#include "oracles.hpp"

using namespace gdof;
using oracle::Q;

namespace {

std::vector<std::vector<Rational>> ints(const std::vector<std::vector<int>>& v) {
    std::vector<std::vector<Rational>> out;
    for (const auto& row : v) {
        auto& r = out.emplace_back();
        for (int x : row) r.push_back(Q(x));
    }
    return out;
}

}  // namespace

TEST_SUITE("generators") {

TEST_CASE("symmetric networks") {
    const auto half = symmetric_network(3, Q(1, 2));
    CHECK(classify(half).in_ctin);
    CHECK(classify(half).in_tin);
    const auto iso = symmetric_network(2, Q(0));
    CHECK(iso.rows() == ints({{1, 0}, {0, 1}}));
    const auto ones = classify(symmetric_network(3, Q(1)));
    CHECK(ones.in_sls);
    CHECK_FALSE(ones.in_ctin);
    CHECK(symmetric_network(3, Q(1)).name() == "symmetric(K=3,a=1)");
    CHECK_THROWS_AS(symmetric_network(0, Q(0)), ValidationError);
    CHECK_THROWS_AS(symmetric_network(2, Q(-1)), ValidationError);
}

TEST_CASE("cyclic networks") {
    CHECK(ctin_cyclic_network(3).rows() == ints({{3, 1, 2}, {2, 3, 1}, {1, 2, 3}}));
    CHECK(ctin_cyclic_network(2).rows() == ints({{2, 1}, {1, 2}}));
    CHECK(ctin_cyclic_network(4).rows()[0] == ints({{4, 1, 2, 3}})[0]);
    CHECK_THROWS_AS(ctin_cyclic_network(1), ValidationError);
}

TEST_CASE("cyclic networks are CTIN with the two membership identities") {
    for (int k = 2; k <= 9; ++k) {
        const auto m = ctin_cyclic_network(k);
        CHECK(oracle::naive_ctin(m));
        for (User j = 2; j <= k; ++j) CHECK(m.alpha(1, j) + m.alpha(j, 1) == Q(k));
    }
}

TEST_CASE("tree networks") {
    const auto t = tree_network(3, Q(1));
    CHECK(delta(t, 1, 4) == Q(1, 4));
    CHECK(delta(t, 4, 1) == Q(1, 4));
    CHECK(delta(t, 3, 7) == Q(1, 2));
    CHECK(delta(t, 7, 3) == Q(1, 2));
    CHECK(delta(t, 7, 8) == Q(1, 8));
    CHECK(tree_network(1, Q(1)).rows() == std::vector<std::vector<Rational>>{{Q(1), Q(1, 2)}, {Q(1, 2), Q(1)}});
    CHECK_THROWS_AS(tree_network(0, Q(1)), ValidationError);
    CHECK_THROWS_AS(tree_network(2, Q(2)), ValidationError);
}

TEST_CASE("tree halves are trees of half the gap") {
    for (int n = 2; n <= 5; ++n) {
        for (const auto& nu : {Q(1), Q(1, 2), Q(1, 3)}) {
            const auto t = tree_network(n, nu);
            const int h = 1 << (n - 1);
            UserSet left = all_users(h), right;
            for (User u = h + 1; u <= 2 * h; ++u) right.push_back(u);
            CHECK(t.restricted_to(left) == tree_network(n - 1, nu / Q(2)));
            CHECK(t.restricted_to(right) == tree_network(n - 1, nu / Q(2)));
        }
    }
}

TEST_CASE("tree networks are SLS and symmetric") {
    for (int n = 1; n <= 4; ++n) {
        const auto t = tree_network(n, Q(1));
        CHECK(oracle::naive_sls(t));
        for (User i = 1; i <= t.size(); ++i)
            for (User j = 1; j <= t.size(); ++j) CHECK(t.alpha(i, j) == t.alpha(j, i));
    }
}

TEST_CASE("TINA of small trees stays at most 2") {
    CHECK(tina_sum(tree_network(1, Q(1))).value == Q(1));
    CHECK(tina_sum(tree_network(2, Q(1))).value == Q(5, 4));
    for (int n = 1; n <= 4; ++n) CHECK(tina_sum(tree_network(n, Q(1))).value <= Q(2));
}

TEST_CASE("the 3-user example network") {
    const auto m = fig1_network();
    CHECK(m.rows() == std::vector<std::vector<Rational>>{
                          {Q(2), Q(1, 5), Q(1)}, {Q(1, 2), Q(1), Q(1, 2)}, {Q(1, 10), Q(1, 2), Q(3, 2)}});
    // boundary equality alpha_22 = alpha_23 + alpha_32
    CHECK(m.alpha(2, 2) == m.alpha(2, 3) + m.alpha(3, 2));
    CHECK(classify(m).in_tin);
}

TEST_CASE("half-cross network pads with silent users") {
    const auto m = half_cross_network(4);
    CHECK(m.size() == 4);
    CHECK(m.alpha(1, 2) == Q(1, 2));
    CHECK(m.alpha(3, 3) == Q(0));
    CHECK(classify(m).in_tin);
    CHECK(tina_sum(m).value == Q(1));
}

TEST_CASE("random draws land in their regime and are reproducible") {
    CHECK(classify(random_in_regime(3, Regime::tin, 1)).in_tin);
    CHECK(classify(random_in_regime(4, Regime::strict_sls, 7)).in_strict_sls);
    for (Regime r : {Regime::tin, Regime::ctin, Regime::sls, Regime::strict_sls}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto a = random_in_regime(5, r, seed);
            CHECK(classify(a).in(r));
            CHECK(a == random_in_regime(5, r, seed));
        }
    }
    CHECK_THROWS_AS(random_in_regime(1, Regime::tin, 0), ValidationError);
}

TEST_CASE("random draws use the 1/1024 grid") {
    const auto m = random_in_regime(4, Regime::sls, 3);
    for (User i = 1; i <= 4; ++i)
        for (User j = 1; j <= 4; ++j) CHECK((m.alpha(i, j) * Q(1024)).is_integer());
}

TEST_CASE("SplitMix64 reference values") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("corpora put injected networks first") {
    const auto c = regime_corpus(4, Regime::sls, 3, 1);
    CHECK(c.size() == 3 + 3);
    CHECK(c[0] == ctin_cyclic_network(4));
    CHECK(c[1] == symmetric_network(4, Q(1)));
    CHECK(c[2] == tree_network(2, Q(1)));
    CHECK(regime_corpus(4, Regime::sls, 3, 1, false).size() == 3);
}

}
