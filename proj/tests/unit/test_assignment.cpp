#include "doctest.h"

#include "gdof/assignment.hpp"
#include "gdof/generators.hpp"
#include "oracles.hpp"

using namespace gdof;
using oracle::Q;

namespace {

template <typename T>
T value_of(const std::vector<std::vector<T>>& w, const std::vector<int>& perm) {
    T v{};
    for (std::size_t r = 0; r < w.size(); ++r) v += w[r][static_cast<std::size_t>(perm[r])];
    return v;
}

std::vector<std::int64_t> flatten(const std::vector<std::vector<std::int64_t>>& w) {
    std::vector<std::int64_t> out;
    for (const auto& row : w) out.insert(out.end(), row.begin(), row.end());
    return out;
}

}  // namespace

TEST_SUITE("assignment") {

TEST_CASE("small fixed instance") {
    const std::vector<std::vector<std::int64_t>> w{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
    const auto perm = max_assignment(flatten(w), 3, true);
    CHECK(value_of(w, perm) == 11);
    CHECK(perm == std::vector<int>{0, 2, 1});
}

TEST_CASE("lexicographic tie-break picks the smallest optimal permutation") {
    const std::vector<std::vector<std::int64_t>> flat{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    CHECK(max_assignment(flatten(flat), 3, true) == std::vector<int>{0, 1, 2});
    const std::vector<std::vector<std::int64_t>> w{{0, 5, 5}, {5, 0, 5}, {5, 5, 0}};
    // optima are the two 3-cycles, value 15
    CHECK(max_assignment(flatten(w), 3, true) == std::vector<int>{1, 2, 0});
}

TEST_CASE("negative weights") {
    const std::vector<std::vector<std::int64_t>> w{{-5, -1}, {-2, -7}};
    const auto perm = max_assignment(flatten(w), 2, false);
    CHECK(value_of(w, perm) == -3);
}

TEST_CASE("rational weights agree with brute force") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below_or_equal(5));
        std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
        for (auto& row : w)
            for (auto& x : row) x = Q(static_cast<long long>(rng.below_or_equal(20)) - 5, 1 + rng.below_or_equal(6));
        const auto perm = max_assignment(w, true);
        CHECK(value_of(w, perm) == oracle::brute_assignment(w));

        // the rational template directly, without scaling
        std::vector<Rational> flat;
        for (const auto& row : w) flat.insert(flat.end(), row.begin(), row.end());
        CHECK(value_of(w, max_assignment(flat, n, false)) == oracle::brute_assignment(w));
    }
}

TEST_CASE("lexicographic result is the smallest optimum") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.below_or_equal(4));
        std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n));
        for (auto& row : w)
            for (auto& x : row) x = static_cast<std::int64_t>(rng.below_or_equal(3));
        const auto best = oracle::brute_assignment(w);
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::vector<int> smallest;
        do {
            if (value_of(w, p) == best) {
                smallest = p;
                break;
            }
        } while (std::next_permutation(p.begin(), p.end()));
        CHECK(max_assignment(flatten(w), n, true) == smallest);
    }
}

TEST_CASE("empty and single instances") {
    CHECK(max_assignment(std::vector<std::int64_t>{}, 0, true).empty());
    CHECK(max_assignment(std::vector<std::int64_t>{7}, 1, true) == std::vector<int>{0});
}

}
