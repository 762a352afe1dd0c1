#pragma once

// Network families and seeded random networks.

#include <cstdint>

#include "gdof/network.hpp"

namespace gdof {

/// SplitMix64 (Steele, Lea, Flood 2014).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform-ish integer in [0, bound] by modulo reduction.
    std::uint64_t below_or_equal(std::uint64_t bound) { return next() % (bound + 1); }

private:
    std::uint64_t state_;
};

/// Diagonal 1, every cross entry a.
ChannelMatrix symmetric_network(int k, const Rational& a);

/// Diagonal K; alpha_ij = (j - i) mod K off the diagonal.
ChannelMatrix ctin_cyclic_network(int k);

/// 2^n users on the leaves of a binary tree. Users whose closest common
/// ancestor is p levels up get delta = 2^(p-1) / 2^n * nu; alpha_ij = 1 - delta.
ChannelMatrix tree_network(int n, const Rational& nu);

/// Rows [2, 1/5, 1], [1/2, 1, 1/2], [1/10, 1/2, 3/2].
ChannelMatrix fig1_network();

/// [[1, 1/2], [1/2, 1]] padded with all-zero users up to K.
ChannelMatrix half_cross_network(int k = 2);

inline constexpr std::int64_t random_denominator = 1024;
inline constexpr int rejection_limit = 10000;

/// Deterministic per (K, regime, seed). Diagonal 1; cross entries are
/// multiples of 1/1024. TIN draws from [0, 1/2]. Other regimes rejection-
/// sample from [0, 1]; after rejection_limit misses the range halves.
/// The result is not uniform over the regime.
ChannelMatrix random_in_regime(int k, Regime regime, std::uint64_t seed);

}  // namespace gdof
