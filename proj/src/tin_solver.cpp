#include "gdof/tin_solver.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "gdof/assignment.hpp"
#include "gdof/errors.hpp"
#include "gdof/parallel.hpp"
#include "gdof/simplex.hpp"

namespace gdof {

Rational GdofPoint::sum() const {
    Rational total;
    for (const auto& v : d) total += v;
    return total;
}

namespace {

UserSet checked_subset(const ChannelMatrix& m, const UserSet& s) {
    UserSet out = make_user_set(s);
    for (User u : out) m.check_user(u);
    return out;
}

// B[a][b] = alpha(S[b], S[a]) off the diagonal, 0 on it: the weight of the
// link S[a] -> S[b] in a cycle.
std::vector<Rational> cover_weights(const ChannelMatrix& m, const UserSet& s) {
    const std::size_t n = s.size();
    std::vector<Rational> w(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b) w[a * n + b] = m.alpha(s[b], s[a]);
        }
    }
    return w;
}

std::vector<int> lex_assignment(const std::vector<Rational>& w, int n, bool lexicographic) {
    const std::int64_t limit = (std::int64_t{1} << 56) / (n + 1);
    if (auto ints = scale_to_integers(w, limit)) return max_assignment(*ints, n, lexicographic);
    return max_assignment(w, n, lexicographic);
}

std::vector<std::uint32_t> subsets_by_size(int k) {
    std::vector<std::uint32_t> out;
    out.reserve((std::size_t{1} << k) - 1);
    for (int size = 1; size <= k; ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        for (int t = 0; t < size; ++t) idx[t] = t;
        while (true) {
            std::uint32_t mask = 0;
            for (int t : idx) mask |= 1u << t;
            out.push_back(mask);
            int t = size - 1;
            while (t >= 0 && idx[t] == k - size + t) --t;
            if (t < 0) break;
            ++idx[t];
            for (int r = t + 1; r < size; ++r) idx[r] = idx[r - 1] + 1;
        }
    }
    return out;
}

UserSet mask_users(std::uint32_t mask) {
    UserSet s;
    for (int b = 0; b < 32; ++b) {
        if (mask & (1u << b)) s.push_back(b + 1);
    }
    return s;
}

}  // namespace

PtinResult ptin_sum(const ChannelMatrix& m, const UserSet& s_in) {
    const UserSet s = checked_subset(m, s_in);
    const int n = static_cast<int>(s.size());
    const auto w = cover_weights(m, s);
    const auto perm = lex_assignment(w, n, true);

    PtinResult r;
    r.subset = s;
    Rational cover;
    for (int a = 0; a < n; ++a) {
        r.value += m.alpha(s[a], s[a]);
        cover += w[static_cast<std::size_t>(a) * n + perm[a]];
    }
    r.value -= cover;
    r.partition = partition_from_successors(s, perm);
    for (const auto& c : r.partition.cycles()) r.certificate.lambdas.emplace_back(c, Rational(1));
    r.certificate.mode = CoverMode::equality;
    r.sls_certified = in_regime(m, Regime::sls);
    return r;
}

OracleResult ptin_sum_oracle(const ChannelMatrix& m, const UserSet& s_in) {
    const UserSet s = checked_subset(m, s_in);
    if (s.size() > oracle_cap) {
        throw CapExceeded("LP oracle is limited to " + std::to_string(oracle_cap) + " users");
    }
    const std::size_t n = s.size();
    std::map<User, std::size_t> pos;
    for (std::size_t a = 0; a < n; ++a) pos[s[a]] = a;

    // smallest Delta per user set
    std::vector<std::optional<Rational>> bound(std::size_t{1} << n);
    for (const auto& c : enumerate_cycles(s)) {
        std::uint32_t mask = 0;
        for (User u : c.users()) mask |= 1u << pos[u];
        Rational d = cycle_delta(m, c);
        if (!bound[mask] || d < *bound[mask]) bound[mask] = std::move(d);
    }

    OracleResult out;
    out.d = GdofPoint(m.size());
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (std::uint32_t mask = 1; mask < bound.size(); ++mask) {
        if (bound[mask]->sign() < 0) {
            out.feasible = false;
            return out;
        }
        auto& row = rows.emplace_back(n);
        for (std::size_t a = 0; a < n; ++a) {
            if (mask & (1u << a)) row[a] = 1;
        }
        rhs.push_back(*bound[mask]);
    }
    out.constraints = static_cast<int>(rows.size());
    const auto lp = simplex_maximize(rows, rhs, std::vector<Rational>(n, Rational(1)));
    if (lp.status != LpSolution::Status::optimal) throw std::logic_error("cycle-bound LP reported unbounded");
    out.value = lp.value;
    for (std::size_t a = 0; a < n; ++a) out.d.at(s[a]) = lp.x[a];
    return out;
}

PtinVerdict ptin_check(const ChannelMatrix& m, const UserSet& s_in, const GdofPoint& d) {
    const UserSet s = checked_subset(m, s_in);
    if (d.size() != m.size()) {
        throw ValidationError("GDoF tuple has " + std::to_string(d.size()) + " entries, expected " +
                              std::to_string(m.size()));
    }
    for (User k = 1; k <= m.size(); ++k) {
        if (d.at(k).sign() < 0) throw ValidationError("negative GDoF for user " + std::to_string(k));
        if (d.at(k).sign() > 0 && !std::binary_search(s.begin(), s.end(), k)) {
            throw ValidationError("user " + std::to_string(k) + " carries GDoF but is outside the subset");
        }
    }
    if (s.size() > check_cap) {
        throw CapExceeded("cycle-bound check is limited to " + std::to_string(check_cap) + " users");
    }
    PtinVerdict v;
    for (const auto& c : enumerate_cycles(s)) {
        Rational load;
        for (User u : c.users()) load += d.at(u);
        Rational bound = cycle_delta(m, c);
        if (load > bound) {
            v.feasible = false;
            v.violated = c;
            v.slack = bound - load;
            v.load = std::move(load);
            v.bound = std::move(bound);
            return v;
        }
    }
    return v;
}

TinaResult tina_sum(const ChannelMatrix& m) {
    const int k = m.size();
    if (k > tina_cap) throw CapExceeded("TINA subset scan is limited to " + std::to_string(tina_cap) + " users");
    const bool sls = in_regime(m, Regime::sls);
    const auto masks = subsets_by_size(k);

    std::size_t best = 0;
    Rational best_value;
    bool have_best = false;

    std::vector<Rational> all;
    for (int i = 1; i <= k; ++i) {
        for (int j = 1; j <= k; ++j) all.push_back(m.alpha(i, j));
    }
    const auto ints = sls ? scale_to_integers(all, (std::int64_t{1} << 56) / (k + 1)) : std::nullopt;

    if (ints) {
        // values in units of the common denominator
        const auto& a = *ints;
        std::vector<std::int64_t> values(masks.size());
        parallel_for(masks.size(), [&](std::size_t idx) {
            const UserSet s = mask_users(masks[idx]);
            const int n = static_cast<int>(s.size());
            std::vector<std::int64_t> w(static_cast<std::size_t>(n) * n, 0);
            std::int64_t diag = 0;
            for (int x = 0; x < n; ++x) {
                diag += a[static_cast<std::size_t>(s[x] - 1) * k + (s[x] - 1)];
                for (int y = 0; y < n; ++y) {
                    if (x != y) w[static_cast<std::size_t>(x) * n + y] = a[static_cast<std::size_t>(s[y] - 1) * k + (s[x] - 1)];
                }
            }
            const auto perm = max_assignment(w, n, false);
            std::int64_t cover = 0;
            for (int x = 0; x < n; ++x) cover += w[static_cast<std::size_t>(x) * n + perm[x]];
            values[idx] = diag - cover;
        });
        for (std::size_t idx = 0; idx < masks.size(); ++idx) {
            if (idx == 0 || values[idx] > values[best]) best = idx;
        }
        have_best = true;
        best_value = ptin_sum(m, mask_users(masks[best])).value;
    } else {
        std::vector<std::optional<Rational>> values(masks.size());
        parallel_for(masks.size(), [&](std::size_t idx) {
            const UserSet s = mask_users(masks[idx]);
            if (!sls && s.size() <= oracle_cap) {
                auto o = ptin_sum_oracle(m, s);
                if (o.feasible) values[idx] = std::move(o.value);
            } else {
                values[idx] = ptin_sum(m, s).value;
            }
        });
        for (std::size_t idx = 0; idx < masks.size(); ++idx) {
            if (!values[idx]) continue;
            if (!have_best || *values[idx] > best_value) {
                best = idx;
                best_value = *values[idx];
                have_best = true;
            }
        }
    }

    TinaResult r;
    r.best_subset = mask_users(masks[best]);
    r.result = ptin_sum(m, r.best_subset);
    r.value = best_value;
    r.certified = sls;
    return r;
}

}  // namespace gdof
