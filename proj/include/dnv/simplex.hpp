#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace dnv {

using Q = mpq_class;

struct LinearRow {
    std::vector<Q> coeff;
    Q rhs;
    bool equality = false;  // otherwise coeff . y >= rhs
};

// Exact phase-one simplex with Bland's rule: finds y >= 0 satisfying all rows,
// or reports infeasibility.
inline std::optional<std::vector<Q>> find_feasible(const std::vector<LinearRow>& rows, int nvars) {
    const int m = static_cast<int>(rows.size());
    int nslack = 0;
    for (auto& r : rows)
        if (!r.equality) ++nslack;
    const int ncols = nvars + nslack + m;  // structural, slack, artificial
    std::vector<std::vector<Q>> T(m, std::vector<Q>(ncols + 1));
    std::vector<int> basis(m);
    int s = nvars;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nvars; ++j) T[i][j] = rows[i].coeff[j];
        if (!rows[i].equality) T[i][s++] = -1;
        T[i][ncols] = rows[i].rhs;
        if (T[i][ncols] < 0)
            for (auto& x : T[i]) x = -x;
        T[i][nvars + nslack + i] = 1;
        basis[i] = nvars + nslack + i;
    }
    // objective: minimise the sum of artificials; reduced costs for nonbasic columns
    std::vector<Q> cost(ncols + 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= ncols; ++j) cost[j] -= T[i][j];
    for (int i = 0; i < m; ++i) cost[nvars + nslack + i] = 0;

    while (true) {
        int enter = -1;
        for (int j = 0; j < ncols; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        Q best;
        for (int i = 0; i < m; ++i)
            if (T[i][enter] > 0) {
                Q ratio = T[i][ncols] / T[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        if (leave < 0) break;  // unbounded direction cannot occur in phase one
        Q piv = T[leave][enter];
        for (auto& x : T[leave]) x /= piv;
        for (int i = 0; i < m; ++i)
            if (i != leave && T[i][enter] != 0) {
                Q f = T[i][enter];
                for (int j = 0; j <= ncols; ++j) T[i][j] -= f * T[leave][j];
            }
        if (cost[enter] != 0) {
            Q f = cost[enter];
            for (int j = 0; j <= ncols; ++j) cost[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    if (cost[ncols] != 0) return std::nullopt;  // -(sum of artificials) < 0
    std::vector<Q> y(nvars);
    for (int i = 0; i < m; ++i)
        if (basis[i] < nvars) y[basis[i]] = T[i][ncols];
    return y;
}

}  // namespace dnv
