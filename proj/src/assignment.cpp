#include "gdof/assignment.hpp"

#include <functional>

#include "gdof/errors.hpp"

namespace gdof {

namespace {

// Min-cost Hungarian with potentials (1-based internals). Returns the
// row->column matching together with the final potentials.
template <typename T>
struct Hungarian {
    int n;
    const std::vector<T>& cost;  // row-major, n x n
    std::vector<T> u, v;
    std::vector<int> p;  // p[col] = row matched to col, 0 = none

    const T& a(int i, int j) const { return cost[static_cast<std::size_t>(i - 1) * n + (j - 1)]; }

    void run() {
        u.assign(n + 1, T(0));
        v.assign(n + 1, T(0));
        p.assign(n + 1, 0);
        std::vector<int> way(n + 1, 0);
        std::vector<T> minv(n + 1, T(0));
        std::vector<char> has_min(n + 1, 0), used(n + 1, 0);
        for (int i = 1; i <= n; ++i) {
            p[0] = i;
            int j0 = 0;
            std::fill(has_min.begin(), has_min.end(), 0);
            std::fill(used.begin(), used.end(), 0);
            do {
                used[j0] = 1;
                const int i0 = p[j0];
                int j1 = -1;
                T delta(0);
                for (int j = 1; j <= n; ++j) {
                    if (used[j]) continue;
                    T cur = a(i0, j) - u[i0] - v[j];
                    if (!has_min[j] || cur < minv[j]) {
                        minv[j] = std::move(cur);
                        has_min[j] = 1;
                        way[j] = j0;
                    }
                    if (j1 < 0 || minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
                for (int j = 0; j <= n; ++j) {
                    if (used[j]) {
                        u[p[j]] += delta;
                        v[j] -= delta;
                    } else {
                        minv[j] -= delta;
                    }
                }
                j0 = j1;
            } while (p[j0] != 0);
            do {
                const int j1 = way[j0];
                p[j0] = p[j1];
                j0 = j1;
            } while (j0 != 0);
        }
    }
};

// Among perfect matchings of the tight-edge graph, picks the
// lexicographically smallest by fixing rows in order and repairing the
// current matching with one augmenting path per trial.
std::vector<int> lexicographic_matching(const std::vector<std::vector<char>>& tight, std::vector<int> row_to_col) {
    const int n = static_cast<int>(row_to_col.size());
    std::vector<int> col_to_row(n);
    for (int r = 0; r < n; ++r) col_to_row[row_to_col[r]] = r;
    std::vector<char> fixed(n, 0), seen(n, 0);

    std::function<bool(int)> augment = [&](int r) {
        for (int c = 0; c < n; ++c) {
            if (!tight[r][c] || fixed[c] || seen[c]) continue;
            seen[c] = 1;
            if (col_to_row[c] < 0 || augment(col_to_row[c])) {
                row_to_col[r] = c;
                col_to_row[c] = r;
                return true;
            }
        }
        return false;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!tight[i][j] || fixed[j]) continue;
            if (row_to_col[i] == j) break;
            const auto saved_rc = row_to_col;
            const auto saved_cr = col_to_row;
            const int displaced = col_to_row[j];
            const int freed = row_to_col[i];
            row_to_col[i] = j;
            col_to_row[j] = i;
            col_to_row[freed] = -1;
            row_to_col[displaced] = -1;
            fixed[j] = 1;  // keep j for row i during the repair
            std::fill(seen.begin(), seen.end(), 0);
            const bool ok = augment(displaced);
            fixed[j] = 0;
            if (ok) break;
            row_to_col = saved_rc;
            col_to_row = saved_cr;
        }
        fixed[row_to_col[i]] = 1;
    }
    return row_to_col;
}

}  // namespace

template <typename T>
std::vector<int> max_assignment(const std::vector<T>& w, int n, bool lexicographic) {
    if (n < 0 || w.size() != static_cast<std::size_t>(n) * n) throw ValidationError("assignment matrix shape");
    if (n == 0) return {};
    std::vector<T> cost(w.size());
    for (std::size_t e = 0; e < w.size(); ++e) cost[e] = -w[e];
    Hungarian<T> h{n, cost, {}, {}, {}};
    h.run();
    std::vector<int> perm(n);
    for (int j = 1; j <= n; ++j) perm[h.p[j] - 1] = j - 1;
    if (!lexicographic) return perm;

    std::vector<std::vector<char>> tight(n, std::vector<char>(n, 0));
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) tight[i - 1][j - 1] = (h.a(i, j) - h.u[i] - h.v[j]) == T(0);
    }
    return lexicographic_matching(tight, std::move(perm));
}

template std::vector<int> max_assignment<std::int64_t>(const std::vector<std::int64_t>&, int, bool);
template std::vector<int> max_assignment<Rational>(const std::vector<Rational>&, int, bool);

std::vector<int> max_assignment(const std::vector<std::vector<Rational>>& w, bool lexicographic) {
    const int n = static_cast<int>(w.size());
    std::vector<Rational> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : w) {
        if (static_cast<int>(row.size()) != n) throw ValidationError("assignment matrix must be square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    const std::int64_t limit = (std::int64_t{1} << 56) / (n + 1);
    if (auto ints = scale_to_integers(flat, limit)) return max_assignment(*ints, n, lexicographic);
    return max_assignment(flat, n, lexicographic);
}

}  // namespace gdof
