#pragma once

// Brute-force reference implementations used only by tests. They read the
// matrix entries directly and share no code with the library solvers.

#include <algorithm>
#include <numeric>
#include <vector>

#include "gdof/network.hpp"

namespace oracle {

using gdof::ChannelMatrix;
using gdof::Rational;

inline Rational Q(long long p, long long q = 1) { return Rational(p, q); }

inline ChannelMatrix matrix(std::vector<std::vector<Rational>> rows) { return ChannelMatrix(std::move(rows)); }

// Regime membership straight from the quantified inequalities, j = k admitted.
inline bool naive_tin(const ChannelMatrix& m) {
    const int k = m.size();
    for (int i = 1; i <= k; ++i)
        for (int l = 1; l <= k; ++l)
            for (int n = 1; n <= k; ++n) {
                if (i == l || i == n) continue;
                if (m.alpha(i, i) < m.alpha(i, l) + m.alpha(n, i)) return false;
            }
    return true;
}

inline bool naive_ctin(const ChannelMatrix& m) {
    const int k = m.size();
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            for (int l = 1; l <= k; ++l) {
                if (i == j || i == l) continue;
                const auto& a = m;
                if (a.alpha(i, i) < a.alpha(i, j) + a.alpha(j, i)) return false;
                if (a.alpha(i, i) < a.alpha(i, l) + a.alpha(j, i) - a.alpha(j, l)) return false;
            }
    return true;
}

inline bool naive_sls(const ChannelMatrix& m, bool strict = false) {
    const int k = m.size();
    auto ok = [strict](const Rational& lhs, const Rational& rhs) { return strict ? lhs > rhs : lhs >= rhs; };
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            for (int l = 1; l <= k; ++l) {
                if (i == j || i == l) continue;
                const auto& aii = m.alpha(i, i);
                if (!ok(aii, m.alpha(i, j)) || !ok(aii, m.alpha(l, i))) return false;
                if (!ok(aii, m.alpha(i, l) + m.alpha(j, i) - m.alpha(j, l))) return false;
            }
    return true;
}

// Delta of the cycle visiting `seq` (1-based users) in order.
inline Rational seq_delta(const ChannelMatrix& m, const std::vector<int>& seq) {
    if (seq.size() == 1) return m.alpha(seq[0], seq[0]);
    Rational d;
    for (std::size_t t = 0; t < seq.size(); ++t) {
        const int i = seq[t], next = seq[(t + 1) % seq.size()];
        d += m.alpha(i, i) - m.alpha(next, i);
    }
    return d;
}

// Cycle decomposition of a permutation of `users` given as users[t] -> perm[t].
inline Rational permutation_delta(const ChannelMatrix& m, const std::vector<int>& users, const std::vector<int>& perm) {
    std::vector<bool> seen(users.size());
    Rational total;
    for (std::size_t s = 0; s < users.size(); ++s) {
        if (seen[s]) continue;
        std::vector<int> seq;
        std::size_t t = s;
        while (!seen[t]) {
            seen[t] = true;
            seq.push_back(users[t]);
            t = static_cast<std::size_t>(std::find(users.begin(), users.end(), perm[t]) - users.begin());
        }
        total += seq_delta(m, seq);
    }
    return total;
}

// Smallest total Delta over all cyclic partitions of S.
inline Rational min_partition_delta(const ChannelMatrix& m, const std::vector<int>& s) {
    std::vector<int> perm = s;
    std::sort(perm.begin(), perm.end());
    bool first = true;
    Rational best;
    do {
        const Rational v = permutation_delta(m, s, perm);
        if (first || v < best) best = v;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::vector<std::vector<int>> subsets(int k) {
    std::vector<std::vector<int>> out;
    for (int mask = 1; mask < (1 << k); ++mask) {
        std::vector<int> s;
        for (int b = 0; b < k; ++b)
            if (mask & (1 << b)) s.push_back(b + 1);
        out.push_back(s);
    }
    return out;
}

// Largest min_partition_delta over subsets; equals TINA inside SLS.
inline Rational brute_tina(const ChannelMatrix& m) {
    Rational best;
    for (const auto& s : subsets(m.size())) best = gdof::max(best, min_partition_delta(m, s));
    return best;
}

// Best of Delta + weakest link over every cyclic partition of [K], each cycle bounded separately.
inline Rational brute_bc_partition_min(const ChannelMatrix& m) {
    const int k = m.size();
    std::vector<int> users(k), perm(k);
    std::iota(users.begin(), users.end(), 1);
    perm = users;
    bool first = true;
    Rational best;
    do {
        std::vector<bool> seen(k);
        Rational total;
        for (int s = 0; s < k; ++s) {
            if (seen[s]) continue;
            std::vector<int> seq;
            int t = s;
            while (!seen[t]) {
                seen[t] = true;
                seq.push_back(users[t]);
                t = perm[t] - 1;
            }
            Rational b = seq_delta(m, seq);
            if (seq.size() > 1) {
                Rational link = m.alpha(seq[1], seq[0]);
                for (std::size_t q = 0; q < seq.size(); ++q)
                    link = gdof::min(link, m.alpha(seq[(q + 1) % seq.size()], seq[q]));
                b += link;
            }
            total += b;
        }
        if (first || total < best) best = total;
        first = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Maximum-weight perfect assignment by trying every permutation.
template <typename T>
T brute_assignment(const std::vector<std::vector<T>>& w) {
    const int n = static_cast<int>(w.size());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    bool first = true;
    T best{};
    do {
        T v{};
        for (int r = 0; r < n; ++r) v += w[r][p[r]];
        if (first || v > best) best = v;
        first = false;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

}  // namespace oracle
