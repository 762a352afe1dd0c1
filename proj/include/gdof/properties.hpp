#pragma once

// Executable structural properties and ratio ceilings, run over seeded
// corpora. Each check returns std::nullopt on success or a failure detail.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdof/bc_bounds.hpp"

namespace gdof {

using Failure = std::optional<std::string>;

// -- corpora --------------------------------------------------------------

std::uint64_t sample_seed(std::uint64_t seed, int k, int tag, std::size_t index);

/// Diagonal 1, cross entries uniform multiples of 1/1024 in [0, 1]; no regime.
ChannelMatrix random_matrix(int k, std::uint64_t seed);

/// Extremal members placed at the front of a regime corpus: the half-cross
/// network (TIN), the cyclic network (CTIN) and, for SLS, the cyclic
/// network, the all-ones network and the tree network when K is a power of two.
std::vector<ChannelMatrix> injected_networks(int k, Regime r);

/// Injected networks followed by `samples` seeded random_in_regime draws.
std::vector<ChannelMatrix> regime_corpus(int k, Regime r, int samples, std::uint64_t seed, bool inject = true);

// -- per-matrix checks ------------------------------------------------------

Failure check_regime_nesting(const ChannelMatrix& m);
Failure check_delta_triangle(const ChannelMatrix& m);
Failure check_cycle_identity(const ChannelMatrix& m);
/// Ordered pairs and triples of disjoint cycles; `limit` caps the number of
/// combinations examined (0 = all).
Failure check_combination(const ChannelMatrix& m, std::size_t limit = 0);
Failure check_ctin_floor(const ChannelMatrix& m);
/// ptin_sum against the LP oracle on [K] and on `subsets` seeded subsets.
Failure check_oracle_equivalence(const ChannelMatrix& m, int subsets, std::uint64_t seed);
Failure check_upper_direction(const ChannelMatrix& m);
Failure check_trivial_merge(const ChannelMatrix& m);
Failure check_partition_attainment(const ChannelMatrix& m);
Failure check_complementary_slackness(const ChannelMatrix& m);
Failure check_non_monotone_witness();

struct RatioObservation {
    Rational tina;
    Rational upper;
    Rational ratio;          // upper / tina
    Rational iterative;      // iterative bound value
    Failure failure;
};

/// Ratio bc_sum_upper / TINA against the regime's ceiling, plus dominance
/// over the iterative bound, its log2 ceiling and the stage-halving bound.
RatioObservation observe_ratio(const ChannelMatrix& m, Regime corpus_regime);

/// Rendered ceiling for a regime at K users: "3/2", "2 - 1/K" value or "2 + log2(K-1)".
std::string ceiling_text(Regime r, int k);

// -- harness ---------------------------------------------------------------

struct SuiteResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failures = 0;
    bool skipped = false;
    std::string note;
    std::optional<Rational> max_ratio;
    std::string ceiling;
    std::optional<ChannelMatrix> witness;
    std::string detail;

    bool ok() const { return failures == 0; }
};

struct HarnessConfig {
    int k = 4;
    int samples = 200;
    std::uint64_t seed = 1;
};

inline constexpr int oracle_suite_cap = 6;
inline constexpr int harness_k_cap = 9;

/// Every property suite at one K. Throws ValidationError for K outside [2..9].
std::vector<SuiteResult> run_property_suites(const HarnessConfig& cfg);

/// Runs one check over a corpus in parallel; the reported witness is the
/// first failing matrix in corpus order.
template <typename Check>
SuiteResult run_suite(std::string name, const std::vector<ChannelMatrix>& corpus, Check&& check);

}  // namespace gdof

#include "gdof/parallel.hpp"

namespace gdof {

template <typename Check>
SuiteResult run_suite(std::string name, const std::vector<ChannelMatrix>& corpus, Check&& check) {
    SuiteResult r;
    r.name = std::move(name);
    std::vector<Failure> results(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t i) { results[i] = check(corpus[i]); });
    r.checked = corpus.size();
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!results[i]) continue;
        if (r.failures++ == 0) {
            r.witness = corpus[i];
            r.detail = *results[i];
        }
    }
    return r;
}

}  // namespace gdof
