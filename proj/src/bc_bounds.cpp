#include "gdof/bc_bounds.hpp"

#include <cstdint>
#include <functional>
#include <map>

#include "gdof/errors.hpp"

namespace gdof {

std::string_view method_name(BoundMethod m) {
    switch (m) {
        case BoundMethod::cycle: return "cycle";
        case BoundMethod::partition: return "partition";
        case BoundMethod::iterative: return "iterative";
        case BoundMethod::hamiltonian_scan: return "hamiltonian-scan";
    }
    return "?";
}

std::optional<BoundMethod> method_from_name(std::string_view name) {
    for (auto m : {BoundMethod::cycle, BoundMethod::partition, BoundMethod::iterative, BoundMethod::hamiltonian_scan}) {
        if (method_name(m) == name) return m;
    }
    return std::nullopt;
}

namespace {

Rational cycle_bound_unchecked(const ChannelMatrix& m, const Cycle& c) {
    if (c.trivial()) return m.alpha(c.head(), c.head());
    Rational weakest = m.alpha(c.at(1), c.at(0));
    for (std::size_t i = 1; i < c.length(); ++i) weakest = min(weakest, m.alpha(c.at(i + 1), c.at(i)));
    return cycle_delta(m, c) + weakest;
}

Rational partition_bound_unchecked(const ChannelMatrix& m, const CyclicPartition& p) {
    if (p.ground_set() != all_users(m.size())) {
        throw ValidationError("partition " + p.str() + " does not cover users 1.." + std::to_string(m.size()));
    }
    Rational total;
    for (const auto& c : p.cycles()) total += cycle_bound_unchecked(m, c);
    return total;
}

// Cheapest partition of [K] by cycle bound: best cycle per user set by DFS,
// then a subset DP that always places the lowest remaining user.
template <typename T, typename Get>
CyclicPartition exhaustive_partition(int k, Get&& a) {
    const std::size_t full = (std::size_t{1} << k);
    std::vector<std::optional<T>> best(full);
    std::vector<std::vector<int>> best_path(full);

    std::vector<int> path;
    std::function<void(int, std::uint32_t, const T&, const T&, const T&)> dfs =
        [&](int head, std::uint32_t mask, const T& diag, const T& weight, const T& weakest) {
            const int last = path.back();
            if (path.size() >= 2) {
                const T& closing = a(head, last);
                T bound = diag - (weight + closing) + (closing < weakest ? closing : weakest);
                if (!best[mask] || bound < *best[mask]) {
                    best[mask] = std::move(bound);
                    best_path[mask] = path;
                }
            }
            for (int v = head + 1; v < k; ++v) {
                if (mask & (1u << v)) continue;
                const T& link = a(v, last);
                path.push_back(v);
                dfs(head, mask | (1u << v), T(diag + a(v, v)), T(weight + link),
                    path.size() == 2 ? link : (link < weakest ? link : weakest));
                path.pop_back();
            }
        };
    for (int h = 0; h < k; ++h) {
        const std::uint32_t mask = 1u << h;
        best[mask] = a(h, h);
        best_path[mask] = {h};
        path = {h};
        dfs(h, mask, a(h, h), T(0), T(0));
    }

    std::vector<T> f(full, T(0));
    std::vector<std::uint32_t> choice(full, 0);
    for (std::uint32_t t = 1; t < full; ++t) {
        const std::uint32_t low = t & (~t + 1);
        bool have = false;
        for (std::uint32_t c = t; c; c = (c - 1) & t) {
            if (!(c & low)) continue;
            T cand = *best[c] + f[t ^ c];
            if (!have || cand < f[t]) {
                f[t] = std::move(cand);
                choice[t] = c;
                have = true;
            }
        }
    }
    std::vector<Cycle> cycles;
    for (std::uint32_t t = static_cast<std::uint32_t>(full - 1); t; t ^= choice[t]) {
        std::vector<User> users;
        for (int v : best_path[choice[t]]) users.push_back(v + 1);
        cycles.emplace_back(std::move(users));
    }
    return CyclicPartition(std::move(cycles));
}

CyclicPartition exhaustive_partition(const ChannelMatrix& m) {
    const int k = m.size();
    std::vector<Rational> all;
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) all.push_back(m.alpha(i, j));
    }
    // a(rx, tx) is 0-based
    if (auto ints = scale_to_integers(all, std::int64_t{1} << 52)) {
        const auto& v = *ints;
        return exhaustive_partition<std::int64_t>(
            k, [&v, k](int rx, int tx) -> const std::int64_t& { return v[static_cast<std::size_t>(rx) * k + tx]; });
    }
    return exhaustive_partition<Rational>(
        k, [&m](int rx, int tx) -> const Rational& { return m.alpha(rx + 1, tx + 1); });
}

BcBoundReport iterative_impl(const ChannelMatrix& m, const Rational& tina) {
    const int k = m.size();
    BcBoundReport r;
    r.method = BoundMethod::iterative;
    r.generator = "iterative";
    r.tina = tina;

    // combined cycle headed by each user of the current stage
    std::map<User, Cycle> headed;
    for (User u = 1; u <= k; ++u) headed.emplace(u, Cycle({u}));
    UserSet stage_users = all_users(k);
    int previous_n = k;
    for (int stage = 0;; ++stage) {
        const auto part = merge_trivial_cycles(ptin_sum(m, stage_users).partition);
        std::map<User, Cycle> next;
        std::vector<Cycle> combined_cycles;
        for (const auto& c : part.cycles()) {
            Cycle joined = headed.at(c.head());
            if (!c.trivial()) {
                std::vector<Cycle> pieces;
                for (User u : c.users()) pieces.push_back(headed.at(u));
                joined = combine(pieces);
            }
            combined_cycles.push_back(joined);
            next.emplace(c.head(), std::move(joined));
        }
        IterativeStage st;
        st.stage = stage;
        st.users = stage_users;
        st.partition = part;
        st.combined = CyclicPartition(combined_cycles);
        st.cycles = static_cast<int>(part.cycles().size());
        st.delta_sum = partition_delta(m, st.combined);
        if (k > 1 && 2 * st.cycles > previous_n + 1) {
            throw std::logic_error("iterative procedure: cycle count did not halve");
        }
        previous_n = st.cycles;
        r.trace.push_back(std::move(st));
        headed = std::move(next);
        if (part.cycles().size() == 1) break;
        stage_users.clear();
        for (const auto& c : part.cycles()) stage_users.push_back(c.head());
    }

    const int stages = static_cast<int>(r.trace.size()) - 1;
    const Cycle& final_cycle = r.trace.back().combined.cycles().front();
    r.witness = final_cycle;
    if (k == 1) {
        r.value = m.alpha(1, 1);
        return r;
    }
    if ((std::int64_t{1} << stages) > k - 1) {
        throw std::logic_error("iterative procedure used more than log2(K-1) stages");
    }
    r.value = cycle_delta(m, final_cycle) + tina;
    r.chain_bound = Rational(stages + 2) * tina;
    return r;
}

}  // namespace

Rational bc_cycle_bound(const ChannelMatrix& m, const Cycle& c) {
    check_cycle(m, c);
    require_sls(m);
    return cycle_bound_unchecked(m, c);
}

Rational bc_partition_bound(const ChannelMatrix& m, const CyclicPartition& p) {
    for (const auto& c : p.cycles()) check_cycle(m, c);
    require_sls(m);
    return partition_bound_unchecked(m, p);
}

BcBoundReport iterative_bound(const ChannelMatrix& m) {
    require_sls(m);
    return iterative_impl(m, tina_sum(m).value);
}

BcBoundReport bc_sum_upper(const ChannelMatrix& m) {
    require_sls(m);
    const int k = m.size();
    std::optional<BcBoundReport> best;
    auto offer = [&best](BcBoundReport cand) {
        if (!best || cand.value < best->value) best = std::move(cand);
    };

    if (k <= exhaustive_partition_cap) {
        BcBoundReport r;
        auto p = exhaustive_partition(m);
        r.value = partition_bound_unchecked(m, p);
        r.method = BoundMethod::partition;
        r.generator = "exhaustive-partition-scan";
        r.witness = std::move(p);
        offer(std::move(r));
    }
    {
        BcBoundReport r;
        auto p = ptin_sum(m, all_users(k)).partition;
        r.value = partition_bound_unchecked(m, p);
        r.method = BoundMethod::partition;
        r.generator = "p-optimal-partition";
        r.witness = std::move(p);
        offer(std::move(r));
    }
    std::vector<Cycle> hamiltonian{Cycle(all_users(k))};
    if (k <= tina_cap) {
        auto it = iterative_impl(m, tina_sum(m).value);
        hamiltonian.push_back(std::get<Cycle>(it.witness));
        offer(std::move(it));
    }
    for (const auto& c : hamiltonian) {
        BcBoundReport r;
        r.value = cycle_bound_unchecked(m, c);
        r.method = BoundMethod::hamiltonian_scan;
        r.generator = "hamiltonian-scan";
        r.witness = c;
        offer(std::move(r));
    }
    return *best;
}

RatioReport ratio_report(const ChannelMatrix& m, const LayeredScheme* scheme) {
    require_sls(m);
    RatioReport r;
    r.tina = tina_sum(m).value;
    if (r.tina.is_zero()) throw ValidationError("degenerate network: TINA sum-GDoF is 0, ratio undefined");
    r.bound = bc_sum_upper(m);
    r.upper = r.bound.value / r.tina;
    if (scheme) {
        r.scheme = verify_scheme(m, *scheme);
        if (r.scheme->ok) r.lower = r.scheme->total / r.tina;
    }
    return r;
}

}  // namespace gdof
