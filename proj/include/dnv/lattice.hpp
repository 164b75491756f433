#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace dnv {

using Int = std::int64_t;
using Vec = std::vector<Int>;

struct UsageError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ContractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checked arithmetic: every overflow is reported instead of wrapping.
inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw InternalError("integer overflow in add");
    return r;
}

inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw InternalError("integer overflow in mul");
    return r;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw UsageError("dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = add(a[i], b[i]);
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw UsageError("dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = add(a[i], -b[i]);
    return r;
}

inline Vec operator*(Int k, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(k, a[i]);
    return r;
}

inline Vec unit(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

struct IntersectionLattice {
    int rank = 0;
    Vec gram;  // row-major rank x rank
    std::vector<std::string> basis_names;

    Int at(int i, int j) const { return gram[static_cast<std::size_t>(i) * rank + j]; }
    Vec basis(int i) const { return unit(static_cast<std::size_t>(rank), static_cast<std::size_t>(i)); }
};

inline IntersectionLattice make_lattice(std::vector<std::vector<Int>> rows, std::vector<std::string> names) {
    IntersectionLattice L;
    L.rank = static_cast<int>(rows.size());
    if (names.size() != rows.size()) throw UsageError("basis name count mismatch");
    for (auto& r : rows) {
        if (r.size() != rows.size()) throw UsageError("gram is not square");
        L.gram.insert(L.gram.end(), r.begin(), r.end());
    }
    for (int i = 0; i < L.rank; ++i)
        for (int j = 0; j < L.rank; ++j)
            if (L.at(i, j) != L.at(j, i)) throw UsageError("gram is not symmetric");
    L.basis_names = std::move(names);
    return L;
}

inline Int pairing(const IntersectionLattice& L, const Vec& a, const Vec& b) {
    if (a.size() != static_cast<std::size_t>(L.rank) || b.size() != static_cast<std::size_t>(L.rank))
        throw UsageError("dimension mismatch in pairing");
    Int s = 0;
    for (int i = 0; i < L.rank; ++i) {
        if (a[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < L.rank; ++j)
            if (b[j] != 0) row = add(row, mul(L.at(i, j), b[j]));
        s = add(s, mul(a[i], row));
    }
    return s;
}

inline Vec embed(const Vec& v) {
    Vec r = v;
    r.push_back(0);
    return r;
}

struct BlowUpResult {
    IntersectionLattice lattice;
    Vec E;
    std::vector<Vec> transformed;  // images of the listed classes, in input order

    Vec transform(const Vec& F, Int m) const { return embed(F) - m * E; }
};

// Blow up a point lying on the listed classes with the given multiplicities.
inline BlowUpResult blow_up(const IntersectionLattice& L, const std::vector<std::pair<Vec, Int>>& through_point,
                            const std::string& name = "E") {
    BlowUpResult out;
    auto& N = out.lattice;
    N.rank = L.rank + 1;
    N.gram.assign(static_cast<std::size_t>(N.rank) * N.rank, 0);
    for (int i = 0; i < L.rank; ++i)
        for (int j = 0; j < L.rank; ++j) N.gram[static_cast<std::size_t>(i) * N.rank + j] = L.at(i, j);
    N.gram.back() = -1;
    N.basis_names = L.basis_names;
    N.basis_names.push_back(name);
    out.E = unit(static_cast<std::size_t>(N.rank), static_cast<std::size_t>(L.rank));
    for (auto& [F, m] : through_point) {
        if (m < 0) throw UsageError("negative multiplicity in blow_up");
        if (F.size() != static_cast<std::size_t>(L.rank)) throw UsageError("dimension mismatch in blow_up");
        out.transformed.push_back(out.transform(F, m));
    }
    return out;
}

struct BlowDownResult {
    IntersectionLattice lattice;
    std::vector<Vec> columns;  // columns[i] = coordinates of push(b_i)

    Vec push(const Vec& C) const {
        if (C.size() != columns.size()) throw UsageError("dimension mismatch in push");
        Vec r(static_cast<std::size_t>(lattice.rank), 0);
        for (std::size_t i = 0; i < C.size(); ++i)
            if (C[i] != 0) r = r + C[i] * columns[i];
        return r;
    }
};

// Contract a (-1)-class. The new basis is the projection of the old basis
// with one coordinate of coefficient +-1 in E deleted; if no such coordinate
// exists the basis is first changed unimodularly so that E becomes a basis vector.
inline BlowDownResult blow_down(const IntersectionLattice& L, const Vec& E) {
    if (pairing(L, E, E) != -1) throw ContractionError("blow_down: class does not have square -1");
    const int n = L.rank;

    // V is a unimodular change of coordinates x -> xV making E a unit vector.
    std::vector<Vec> V(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) V[i][i] = 1;
    Vec c = E;
    int k = -1;
    for (int i = n - 1; i >= 0; --i)
        if (c[i] == 1 || c[i] == -1) {
            k = i;
            break;
        }
    if (k < 0) {
        // Euclid on the coefficient row by column operations.
        auto colop = [&](int dst, int src, Int q) {  // col dst -= q * col src
            c[dst] = add(c[dst], -mul(q, c[src]));
            for (int r = 0; r < n; ++r) V[r][dst] = add(V[r][dst], -mul(q, V[r][src]));
        };
        while (true) {
            int piv = -1;
            for (int i = 0; i < n; ++i)
                if (c[i] != 0 && (piv < 0 || std::abs(c[i]) < std::abs(c[piv]))) piv = i;
            bool done = true;
            for (int i = 0; i < n; ++i)
                if (i != piv && c[i] != 0) {
                    colop(i, piv, c[i] / c[piv]);
                    done = false;
                }
            if (done) {
                k = piv;
                break;
            }
        }
        if (c[k] != 1 && c[k] != -1) throw ContractionError("blow_down: class is not primitive");
    }

    // Coordinates y = xV with respect to the basis b' = V^{-1} b. In these
    // coordinates E has coefficient c with c[k] = +-1. The new basis vectors are
    // the projections p(b'_i), i != k, where row i of V^{-1} gives b'_i.
    std::vector<Int> EG(n, 0);
    for (int i = 0; i < n; ++i) EG[i] = pairing(L, unit(n, i), E);

    std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(2 * n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) A[i][j] = static_cast<long>(V[i][j]);
        A[i][n + i] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int p = col;
        while (A[p][col] == 0) ++p;
        std::swap(A[p], A[col]);
        mpq_class inv = 1 / A[col][col];
        for (auto& x : A[col]) x *= inv;
        for (int r = 0; r < n; ++r)
            if (r != col && A[r][col] != 0) {
                mpq_class f = A[r][col];
                for (int j = 0; j < 2 * n; ++j) A[r][j] -= f * A[col][j];
            }
    }
    std::vector<Vec> Vinv(n, Vec(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const mpq_class& q = A[i][n + j];
            if (q.get_den() != 1) throw InternalError("blow_down: non-unimodular change of basis");
            Vinv[i][j] = q.get_num().get_si();
        }

    // b'_i in x-coordinates: row i of V^{-1} (since x = y V^{-1}).
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
        if (i != k) keep.push_back(i);
    std::vector<Vec> proj;  // p(b'_i) in x-coordinates
    for (int i : keep) {
        const Vec& b = Vinv[i];
        Int be = 0;
        for (int j = 0; j < n; ++j) be = add(be, mul(b[j], EG[j]));
        proj.push_back(b + be * E);
    }

    BlowDownResult out;
    auto& N = out.lattice;
    N.rank = n - 1;
    N.gram.assign(static_cast<std::size_t>(N.rank) * N.rank, 0);
    for (int i = 0; i < N.rank; ++i)
        for (int j = 0; j < N.rank; ++j) N.gram[static_cast<std::size_t>(i) * N.rank + j] = pairing(L, proj[i], proj[j]);
    for (int i : keep) N.basis_names.push_back(L.basis_names[i]);

    // push(b_j): b_j = sum_i V[j][i] b'_i, p(b'_k) = -c_k sum_{i != k} c_i p(b'_i).
    out.columns.assign(n, Vec(N.rank, 0));
    for (int j = 0; j < n; ++j) {
        Vec y = V[j];
        for (int t = 0; t < N.rank; ++t) {
            int i = keep[t];
            out.columns[j][t] = add(y[i], -mul(mul(y[k], c[k]), c[i]));
        }
    }
    return out;
}

// Exact inertia by congruence diagonalization over the rationals.
struct Inertia {
    int pos = 0, neg = 0, zero = 0;
};

inline Inertia inertia(const IntersectionLattice& L) {
    const int n = L.rank;
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = static_cast<long>(L.at(i, j));
    Inertia out;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && M[i][i] != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && M[i][j] != 0) {
                        a = i;
                        b = j;
                        break;
                    }
            if (a < 0) {
                for (int i = 0; i < n; ++i)
                    if (!done[i]) ++out.zero;
                return out;
            }
            for (int j = 0; j < n; ++j) M[a][j] += M[b][j];
            for (int j = 0; j < n; ++j) M[j][a] += M[j][b];
            p = a;
        }
        done[p] = true;
        if (M[p][p] > 0)
            ++out.pos;
        else
            ++out.neg;
        for (int i = 0; i < n; ++i)
            if (!done[i] && M[i][p] != 0) {
                mpq_class f = M[i][p] / M[p][p];
                for (int j = 0; j < n; ++j) M[i][j] -= f * M[p][j];
                for (int j = 0; j < n; ++j) M[j][i] -= f * M[j][p];
            }
    }
    return out;
}

// Determinant of an integer matrix by Bareiss elimination (exact).
inline mpz_class determinant(std::vector<std::vector<Int>> rows) {
    const int n = static_cast<int>(rows.size());
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = static_cast<long>(rows[i][j]);
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M[k][k] == 0) {
            int r = k + 1;
            while (r < n && M[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(M[r], M[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

inline mpz_class gram_determinant(const IntersectionLattice& L, const std::vector<Vec>& classes) {
    std::vector<std::vector<Int>> G(classes.size(), std::vector<Int>(classes.size()));
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = 0; j < classes.size(); ++j) G[i][j] = pairing(L, classes[i], classes[j]);
    return determinant(std::move(G));
}

inline mpz_class determinant(const IntersectionLattice& L) {
    std::vector<Vec> b;
    for (int i = 0; i < L.rank; ++i) b.push_back(L.basis(i));
    return gram_determinant(L, b);
}

}  // namespace dnv
