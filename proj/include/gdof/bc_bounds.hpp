#pragma once

// Broadcast-channel sum-GDoF upper bounds for SLS networks: per-cycle and
// per-partition bounds, the staged cycle-combining procedure and the
// minimum over all implemented generators.

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "gdof/schemes.hpp"
#include "gdof/tin_solver.hpp"

namespace gdof {

enum class BoundMethod { cycle, partition, iterative, hamiltonian_scan };

std::string_view method_name(BoundMethod m);
std::optional<BoundMethod> method_from_name(std::string_view name);

struct IterativeStage {
    int stage = 0;
    UserSet users;               // S_lambda
    CyclicPartition partition;   // p-optimal partition of S_lambda, at most one trivial cycle
    CyclicPartition combined;    // the matching partition of [K]
    int cycles = 0;              // N_lambda
    Rational delta_sum;          // sum of Delta over `combined`
};

struct BcBoundReport {
    Rational value;
    BoundMethod method = BoundMethod::partition;
    std::variant<CyclicPartition, Cycle> witness;
    std::string generator;  // which candidate produced the value

    // filled by the iterative procedure
    std::vector<IterativeStage> trace;
    std::optional<Rational> tina;
    std::optional<Rational> chain_bound;  // (stages + 2) * TINA
};

/// Delta of c plus its weakest link; alpha_ii for a trivial cycle (i).
/// Throws RegimeRefusal outside SLS.
Rational bc_cycle_bound(const ChannelMatrix& m, const Cycle& c);

/// Sum of cycle bounds over a partition of [K].
Rational bc_partition_bound(const ChannelMatrix& m, const CyclicPartition& p);

inline constexpr int exhaustive_partition_cap = 9;

/// Runs the staged procedure from S_0 = [K] until one cycle remains and
/// returns Delta of the final combined cycle plus TINA.
BcBoundReport iterative_bound(const ChannelMatrix& m);

/// Smallest bound over: every cyclic partition (K <= 9), the p-optimal
/// partition, the iterative procedure, and a scan of Hamiltonian cycles
/// (identity order and the final iterative cycle). Ties go to the earlier
/// generator in that list.
BcBoundReport bc_sum_upper(const ChannelMatrix& m);

struct RatioReport {
    Rational upper;
    Rational tina;
    BcBoundReport bound;
    std::optional<SchemeVerdict> scheme;
    std::optional<Rational> lower;  // scheme total / TINA, only when the scheme verifies
};

/// upper = bc_sum_upper / TINA. Throws ValidationError when TINA = 0.
RatioReport ratio_report(const ChannelMatrix& m, const LayeredScheme* scheme = nullptr);

}  // namespace gdof
