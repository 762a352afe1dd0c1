#include "gdof/simplex.hpp"

#include "gdof/errors.hpp"

namespace gdof {

LpSolution simplex_maximize(const std::vector<std::vector<Rational>>& a_in, const std::vector<Rational>& b_in,
                            const std::vector<Rational>& c_in) {
    const int m = static_cast<int>(a_in.size());
    const int n = static_cast<int>(c_in.size());
    if (static_cast<int>(b_in.size()) != m) throw ValidationError("simplex: row count mismatch");
    for (const auto& row : a_in) {
        if (static_cast<int>(row.size()) != n) throw ValidationError("simplex: column count mismatch");
    }
    for (const auto& bi : b_in) {
        if (bi.sign() < 0) throw ValidationError("simplex: right-hand sides must be non-negative");
    }

    // Dictionary: x_B[i] = b[i] - sum_j a[i][j] x_N[j];  z = z + sum_j c[j] x_N[j].
    auto a = a_in;
    auto b = b_in;
    auto c = c_in;
    Rational z;
    std::vector<int> basic(m), nonbasic(n);
    for (int j = 0; j < n; ++j) nonbasic[j] = j;
    for (int i = 0; i < m; ++i) basic[i] = n + i;

    LpSolution out;
    while (true) {
        int s = -1;
        for (int j = 0; j < n; ++j) {
            if (c[j].sign() > 0 && (s < 0 || nonbasic[j] < nonbasic[s])) s = j;
        }
        if (s < 0) break;

        int r = -1;
        Rational best_ratio;
        for (int i = 0; i < m; ++i) {
            if (a[i][s].sign() <= 0) continue;
            Rational ratio = b[i] / a[i][s];
            if (r < 0 || ratio < best_ratio || (ratio == best_ratio && basic[i] < basic[r])) {
                r = i;
                best_ratio = std::move(ratio);
            }
        }
        if (r < 0) {
            out.status = LpSolution::Status::unbounded;
            return out;
        }

        const Rational inv = Rational(1) / a[r][s];
        for (int j = 0; j < n; ++j) {
            if (j != s) a[r][j] *= inv;
        }
        a[r][s] = inv;
        b[r] *= inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || a[i][s].is_zero()) continue;
            const Rational f = a[i][s];
            for (int j = 0; j < n; ++j) {
                if (j != s && !a[r][j].is_zero()) a[i][j] -= f * a[r][j];
            }
            a[i][s] = -(f * inv);
            b[i] -= f * b[r];
        }
        if (!c[s].is_zero()) {
            const Rational f = c[s];
            for (int j = 0; j < n; ++j) {
                if (j != s && !a[r][j].is_zero()) c[j] -= f * a[r][j];
            }
            c[s] = -(f * inv);
            z += f * b[r];
        }
        std::swap(basic[r], nonbasic[s]);
        ++out.pivots;
    }

    out.value = z;
    out.x.assign(n, Rational(0));
    out.dual.assign(m, Rational(0));
    for (int i = 0; i < m; ++i) {
        if (basic[i] < n) out.x[basic[i]] = b[i];
    }
    for (int j = 0; j < n; ++j) {
        if (nonbasic[j] >= n) out.dual[nonbasic[j] - n] = -c[j];
    }
    return out;
}

}  // namespace gdof
