#include "gdof/generators.hpp"

#include <bit>

#include "gdof/errors.hpp"

namespace gdof {

namespace {

using Rows = std::vector<std::vector<Rational>>;

Rows square(int k, const Rational& fill) { return Rows(static_cast<std::size_t>(k), std::vector<Rational>(k, fill)); }

}  // namespace

ChannelMatrix symmetric_network(int k, const Rational& a) {
    if (k < 1) throw ValidationError("symmetric network needs K >= 1");
    if (a.sign() < 0) throw ValidationError("symmetric network needs a >= 0");
    Rows rows = square(k, a);
    for (int i = 0; i < k; ++i) rows[i][i] = 1;
    return ChannelMatrix(std::move(rows), "symmetric(K=" + std::to_string(k) + ",a=" + a.str() + ")");
}

ChannelMatrix ctin_cyclic_network(int k) {
    if (k < 2) throw ValidationError("cyclic network needs K >= 2");
    Rows rows = square(k, Rational(0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) rows[i][j] = i == j ? k : ((j - i) % k + k) % k;
    }
    return ChannelMatrix(std::move(rows), "ctin_cyclic(K=" + std::to_string(k) + ")");
}

ChannelMatrix tree_network(int n, const Rational& nu) {
    if (n < 1 || n > 12) throw ValidationError("tree network depth must lie in [1..12]");
    if (nu.sign() < 0 || nu > Rational(1)) throw ValidationError("tree network needs 0 <= nu <= 1");
    const int k = 1 << n;
    Rows rows = square(k, Rational(1));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            const int p = std::bit_width(static_cast<unsigned>(i ^ j));
            rows[i][j] = Rational(1) - pow2(p - 1 - n) * nu;
        }
    }
    return ChannelMatrix(std::move(rows), "tree(n=" + std::to_string(n) + ",nu=" + nu.str() + ")");
}

ChannelMatrix fig1_network() {
    Rows rows = {
        {Rational(2), Rational(1, 5), Rational(1)},
        {Rational(1, 2), Rational(1), Rational(1, 2)},
        {Rational(1, 10), Rational(1, 2), Rational(3, 2)},
    };
    return ChannelMatrix(std::move(rows), "fig1");
}

ChannelMatrix half_cross_network(int k) {
    if (k < 2) throw ValidationError("half-cross network needs K >= 2");
    Rows rows = square(k, Rational(0));
    rows[0][0] = rows[1][1] = 1;
    rows[0][1] = rows[1][0] = Rational(1, 2);
    return ChannelMatrix(std::move(rows), "half_cross(K=" + std::to_string(k) + ")");
}

ChannelMatrix random_in_regime(int k, Regime regime, std::uint64_t seed) {
    if (k < 2) throw ValidationError("random networks need K >= 2");
    SplitMix64 rng(seed);
    const std::int64_t den = random_denominator;
    std::int64_t range = regime == Regime::tin ? den / 2 : den;
    std::vector<std::int64_t> cells(static_cast<std::size_t>(k) * k);
    int misses = 0;
    while (true) {
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                cells[static_cast<std::size_t>(i) * k + j] =
                    i == j ? den : static_cast<std::int64_t>(rng.below_or_equal(static_cast<std::uint64_t>(range)));
            }
        }
        if (in_regime(cells, k, regime)) break;
        if (++misses == rejection_limit) {
            misses = 0;
            range /= 2;
        }
    }
    Rows rows = square(k, Rational(0));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) rows[i][j] = Rational(cells[static_cast<std::size_t>(i) * k + j], den);
    }
    return ChannelMatrix(std::move(rows), "random(K=" + std::to_string(k) + ",regime=" +
                                              std::string(regime_name(regime)) + ",seed=" + std::to_string(seed) + ")");
}

}  // namespace gdof
