#pragma once

// Cycles of users, their weights and Delta values, cycle combination and
// exhaustive enumeration of cycles / cyclic partitions of a user set.

#include <string>
#include <string_view>
#include <vector>

#include "gdof/network.hpp"

namespace gdof {

using UserSet = std::vector<User>;  // sorted, distinct

/// Sorts, deduplicates and checks positivity; throws ValidationError on an
/// empty set or a non-positive index.
UserSet make_user_set(std::vector<User> users);
UserSet all_users(int k);

/// An ordered cycle (i1 -> i2 -> ... -> iM -> i1) of distinct users, stored
/// rotated so the smallest user leads. Direction is preserved.
class Cycle {
public:
    explicit Cycle(std::vector<User> users);

    const std::vector<User>& users() const { return users_; }
    std::size_t length() const { return users_.size(); }
    bool trivial() const { return users_.size() == 1; }
    User head() const { return users_.front(); }
    /// 0-based position with wraparound.
    User at(std::size_t m) const { return users_[m % users_.size()]; }
    UserSet user_set() const;

    std::string str() const;

    friend bool operator==(const Cycle&, const Cycle&) = default;
    friend auto operator<=>(const Cycle& a, const Cycle& b) {
        if (a.length() != b.length()) return a.length() <=> b.length();
        return a.users_ <=> b.users_;
    }

private:
    std::vector<User> users_;
};

/// Accepts "(1→2→3)", "(1->2->3)" and "(5)".
Cycle parse_cycle(std::string_view text);

class CyclicPartition {
public:
    CyclicPartition() = default;
    /// Cycles must be pairwise disjoint; the ground set is their union.
    explicit CyclicPartition(std::vector<Cycle> cycles);

    const std::vector<Cycle>& cycles() const { return cycles_; }
    const UserSet& ground_set() const { return ground_; }
    std::size_t trivial_count() const;

    std::string str() const;

    friend bool operator==(const CyclicPartition& a, const CyclicPartition& b) { return a.cycles_ == b.cycles_; }

private:
    std::vector<Cycle> cycles_;  // ordered by head
    UserSet ground_;
};

/// Accepts "{(1→2),(3)}".
CyclicPartition parse_partition(std::string_view text);

/// Sum of the interfering link strengths alpha_{i_{m+1} i_m}; 0 for a trivial cycle.
Rational weight(const ChannelMatrix& m, const Cycle& c);
/// Sum of delta_{i_m i_{m+1}} around the cycle; alpha_{i1 i1} for a trivial cycle.
Rational cycle_delta(const ChannelMatrix& m, const Cycle& c);
Rational partition_delta(const ChannelMatrix& m, const CyclicPartition& p);
void check_cycle(const ChannelMatrix& m, const Cycle& c);

/// Concatenates >= 2 pairwise-disjoint cycles in the given order, each taken
/// from its stored head, and canonicalizes the result.
Cycle combine(const std::vector<Cycle>& cycles);

/// The cycle through the heads of the given cycles, in order.
Cycle heads_cycle(const std::vector<Cycle>& cycles);

/// Every cycle whose users lie in S, ordered by length then lexicographically.
std::vector<Cycle> enumerate_cycles(const UserSet& s);

inline constexpr std::size_t partition_enumeration_cap = 10;

/// Every cyclic partition of S, in lexicographic order of the corresponding
/// permutation. Throws CapExceeded when |S| > partition_enumeration_cap.
std::vector<CyclicPartition> enumerate_partitions(const UserSet& s);

/// Cycles of the permutation users[i] -> users[succ[i]] as a partition.
CyclicPartition partition_from_successors(const UserSet& users, const std::vector<int>& succ);

/// Joins all trivial cycles of a partition (in head order) into one cycle.
/// Delta of the joined cycle never exceeds the sum it replaces.
CyclicPartition merge_trivial_cycles(const CyclicPartition& p);

}  // namespace gdof
