#pragma once

// Polyhedral-TIN sum-GDoF over a user subset (assignment solver and an
// exact LP oracle), cycle-bound feasibility checks and the TINA subset scan.

#include <optional>
#include <utility>
#include <vector>

#include "gdof/cycles.hpp"

namespace gdof {

/// GDoF tuple over users 1..K; d[k-1] is user k's share.
struct GdofPoint {
    std::vector<Rational> d;

    GdofPoint() = default;
    explicit GdofPoint(int k) : d(static_cast<std::size_t>(k)) {}
    explicit GdofPoint(std::vector<Rational> values) : d(std::move(values)) {}

    int size() const { return static_cast<int>(d.size()); }
    const Rational& at(User k) const { return d.at(static_cast<std::size_t>(k - 1)); }
    Rational& at(User k) { return d.at(static_cast<std::size_t>(k - 1)); }
    Rational sum() const;
};

enum class CoverMode { equality, inequality };

struct DualCertificate {
    std::vector<std::pair<Cycle, Rational>> lambdas;
    CoverMode mode = CoverMode::equality;
};

struct PtinResult {
    UserSet subset;
    Rational value;
    CyclicPartition partition;
    DualCertificate certificate;
    bool sls_certified = false;
};

/// Sum of alpha_kk over S minus the maximum-weight cycle cover of S, solved
/// as an assignment problem. The partition is the optimal permutation's
/// cycle decomposition, lexicographically smallest among optima. The value
/// equals the LP optimum when m is SLS and upper-bounds it otherwise.
PtinResult ptin_sum(const ChannelMatrix& m, const UserSet& s);

inline constexpr std::size_t oracle_cap = 8;

struct OracleResult {
    bool feasible = true;  // false when some cycle bound over S is negative
    Rational value;
    GdofPoint d;           // an optimal tuple, zero outside S
    int constraints = 0;
};

/// Maximizes sum d_k subject to every cycle bound over S and d >= 0 by exact
/// simplex. Cycles sharing a user set contribute only their smallest bound.
OracleResult ptin_sum_oracle(const ChannelMatrix& m, const UserSet& s);

inline constexpr std::size_t check_cap = 10;

struct PtinVerdict {
    bool feasible = true;
    std::optional<Cycle> violated;  // first violated cycle in enumeration order
    Rational load;                  // sum of d over the violated cycle
    Rational bound;                 // its Delta
    Rational slack;                 // bound - load (negative when violated)
};

PtinVerdict ptin_check(const ChannelMatrix& m, const UserSet& s, const GdofPoint& d);

inline constexpr int tina_cap = 20;

struct TinaResult {
    Rational value;
    UserSet best_subset;
    PtinResult result;       // ptin_sum on best_subset
    bool certified = false;  // matrix is SLS
};

/// Maximum over nonempty subsets S of the polyhedral-TIN value. Subsets are
/// visited by size then lexicographically; the first strict maximum wins.
/// Outside SLS, subsets of at most oracle_cap users use the LP oracle.
TinaResult tina_sum(const ChannelMatrix& m);

}  // namespace gdof
