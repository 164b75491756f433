#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curve_structure.hpp"
#include "simplex.hpp"

namespace dnv {

using Coefficients = std::map<std::string, Q>;  // tracked curve name -> coefficient

inline Q certificate_pairing(const AnticanonicalPair& Y, const Coefficients& f, const Vec& v) {
    Q s = 0;
    for (auto& [n, q] : f) s += q * static_cast<long>(Y.pair(Y.curves[Y.curve_index(n)].cls, v));
    return s;
}

inline Q side_degree(const AnticanonicalPair& Y, const Coefficients& f, const std::string& side) {
    return certificate_pairing(Y, f, Y.boundary[Y.side_index(side)].cls);
}

// Strictly positive on every tracked curve and every side of the component.
inline bool positive_on_generators(const AnticanonicalPair& Y, const Coefficients& f) {
    for (int i : Y.tracked())
        if (certificate_pairing(Y, f, Y.curves[i].cls) <= 0) return false;
    for (auto& d : Y.boundary)
        if (certificate_pairing(Y, f, d.cls) <= 0) return false;
    return true;
}

// Coefficients strictly increase along every leg, read from its exceptional vertex.
inline bool legs_increasing(const AnticanonicalPair& Y, const Coefficients& f) {
    auto a = extract(Y);
    auto c = classify(a);
    auto coeff = [&](int v) {
        auto it = f.find(a.core.vertices[v].first);
        return it == f.end() ? Q(0) : it->second;
    };
    for (auto& [v, leg] : c.legs)
        for (std::size_t i = 0; i + 1 < leg.size(); ++i)
            if (!(coeff(leg[i + 1]) > coeff(leg[i]))) return false;
    return true;
}

namespace detail {

// Rational coordinates of a class over the tracked curves (a Q-basis).
inline Coefficients coordinates(const AnticanonicalPair& Y, const Vec& cls) {
    auto tr = Y.tracked();
    const int n = static_cast<int>(tr.size());
    std::vector<std::vector<Q>> G(n, std::vector<Q>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) G[i][j] = static_cast<long>(Y.pair(Y.curves[tr[i]].cls, Y.curves[tr[j]].cls));
        G[i][n] = static_cast<long>(Y.pair(Y.curves[tr[i]].cls, cls));
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && G[p][c] == 0) ++p;
        if (p == n) throw InternalError("tracked curves do not form a basis");
        std::swap(G[p], G[c]);
        for (int r = 0; r < n; ++r)
            if (r != c && G[r][c] != 0) {
                Q q = G[r][c] / G[c][c];
                for (int j = c; j <= n; ++j) G[r][j] -= q * G[c][j];
            }
    }
    Coefficients out;
    for (int i = 0; i < n; ++i) {
        Q x = G[i][n] / G[i][i];
        if (x != 0) out[Y.curves[tr[i]].name] = x;
    }
    return out;
}

inline void add_scaled(Coefficients& into, const Coefficients& from, const Q& t) {
    for (auto& [n, q] : from) {
        into[n] += t * q;
        if (into[n] == 0) into.erase(n);
    }
}

inline Q tri(Int i) { return Q(i * (i + 1) / 2); }

inline Int ceil_div2(Int e) { return e >= 0 ? (e + 1) / 2 : -((-e) / 2); }

struct Shape {
    AugmentedCurveStructure acs;
    Classification cls;
    const std::string& name(int v) const { return acs.core.vertices[v].first; }
    int side_of(int v) const {  // the side met by an exceptional vertex
        for (std::size_t k = 0; k < acs.boundary_vertices.size(); ++k)
            if (acs.inc[v][k] != 0) return static_cast<int>(k);
        return -1;
    }
};

inline Shape shape_of(const AnticanonicalPair& Y) {
    Shape s;
    s.acs = extract(Y);
    s.cls = classify(s.acs);
    return s;
}

}  // namespace detail

enum class Recipe {
    balanced,          // non-degenerate, degrees (e + k1, e + k2)
    stretched,         // non-degenerate with D1^2 <= 0, degrees (e + k1, gamma e + k2)
    three_halves,      // non-degenerate with D1^2 = 1, degrees (e, 3e/2 + k)
    regular_leg,       // degenerate and regular with an exceptional vertex, degrees (e, e + m)
    regular_pair,      // degenerate and regular without exceptional vertex (two vertices), degrees (e, c e + m)
    singleton,         // one vertex, degrees (e, 2e)
    non_regular_leg,   // non-regular with an exceptional vertex, degrees (e, 2e + m)
};

struct DegreeSpec {
    Recipe recipe = Recipe::balanced;
    std::string side1;  // D1 of the recipe; for the degenerate recipes the side of degree e
    Int e = 0;
    Int k1 = 0, k2 = 0;
    Int gamma = 2;
};

namespace detail {

inline std::optional<Coefficients> balanced(const AnticanonicalPair& Y, const std::string& side1, Int e, Int k1, Int k2) {
    auto s = shape_of(Y);
    if (s.cls.degenerate || s.cls.exceptional_vertices.size() != 2) return std::nullopt;
    const int d1 = Y.side_index(side1);
    int f0 = s.cls.exceptional_vertices[0], g0 = s.cls.exceptional_vertices[1];
    if (s.side_of(f0) != d1) std::swap(f0, g0);
    if (s.side_of(f0) != d1 || s.side_of(g0) == d1) return std::nullopt;
    auto F = s.cls.legs.at(f0), G = s.cls.legs.at(g0);
    if (F.back() != G.back()) return std::nullopt;
    const int c = F.back();
    F.pop_back();
    G.pop_back();
    std::vector<int> rest;
    for (int v = 0; v < s.acs.size(); ++v)
        if (v != c && std::find(F.begin(), F.end(), v) == F.end() && std::find(G.begin(), G.end(), v) == G.end()) rest.push_back(v);
    if (rest.size() != 1) return std::nullopt;
    const int y = rest[0];
    Int n = static_cast<Int>(F.size()) - 1, m = static_cast<Int>(G.size()) - 1;
    Int ka = k1, kb = k2;
    // the longer (weighted) leg plays the first role
    if (Q(ka) + tri(n) < Q(kb) + tri(m)) {
        std::swap(F, G);
        std::swap(n, m);
        std::swap(ka, kb);
    }
    Q delta1 = Q(ka) + tri(n) - Q(kb) - tri(m) + 2 * std::max(n, m) + 2;
    Q delta = 2 * delta1 + 2;
    if (!(Q(e) > delta)) return std::nullopt;
    Coefficients f;
    for (Int i = 0; i <= n; ++i) f[s.name(F[i])] = Q(e + ka) + tri(i);
    for (Int i = 0; i <= m; ++i) f[s.name(G[i])] = Q(e + kb) + tri(i);
    f[s.name(c)] = std::max(f[s.name(F[n])], f[s.name(G[m])]) + std::max(n, m) + 1;
    f[s.name(y)] = ceil_div2(e) - 1;
    return f;
}

inline std::optional<Coefficients> three_halves(const AnticanonicalPair& Y, const std::string& side1, Int e, Int k) {
    auto s = shape_of(Y);
    const int d1 = Y.side_index(side1);
    if (s.cls.degenerate || s.cls.exceptional_vertices.size() != 2) return std::nullopt;
    if (Y.square(Y.boundary[d1].cls) != 1 || e % 2 != 0) return std::nullopt;
    int ve1 = s.cls.exceptional_vertices[0], ve2 = s.cls.exceptional_vertices[1];
    if (s.side_of(ve1) != d1) std::swap(ve1, ve2);
    if (s.side_of(ve1) != d1) return std::nullopt;
    auto L1 = s.cls.legs.at(ve1), L2 = s.cls.legs.at(ve2);
    if (L1.size() != 2 || L1.back() != L2.back()) return std::nullopt;
    const int c = L2.back();
    L2.pop_back();
    std::vector<int> rest;
    for (int v = 0; v < s.acs.size(); ++v)
        if (v != c && v != ve1 && std::find(L2.begin(), L2.end(), v) == L2.end()) rest.push_back(v);
    if (rest.size() != 1) return std::nullopt;
    const int y = rest[0];
    const Int n = static_cast<Int>(L2.size()) - 1;
    const Int delta = n * (n + 1) + 6 * n + 2 * k + 10;
    if (e <= delta) return std::nullopt;
    Coefficients f;
    f[s.name(ve1)] = e;
    for (Int i = 0; i <= n; ++i) f[s.name(L2[i])] = Q(3 * e / 2 + k) + tri(i);
    f[s.name(c)] = f[s.name(L2[n])] + n + 1;
    f[s.name(y)] = Q(e / 2 + 2 * n + 3 + k) + tri(n);
    return f;
}

inline std::optional<Coefficients> stretched(const AnticanonicalPair& Y, const std::string& side1, Int e, Int k1, Int k2, Int gamma) {
    const int d1 = Y.side_index(side1);
    const Vec& D1 = Y.boundary[d1].cls;
    const Vec& D2 = Y.boundary[1 - d1].cls;
    const Int sq = Y.square(D1);
    if (sq > 0 || gamma <= 1) return std::nullopt;
    auto base = balanced(Y, side1, e, k1, k2);
    if (!base) return std::nullopt;
    // a nef class M with M.D1 = 0 and M.D2 > 0
    Coefficients M;
    if (sq == 0) {
        M = coordinates(Y, D1);
    } else {
        Coefficients L;
        for (Int e0 = 4;; e0 *= 2) {
            auto l = balanced(Y, side1, e0, 0, 0);
            if (l) {
                L = *l;
                break;
            }
            if (e0 > (Int(1) << 40)) return std::nullopt;
        }
        add_scaled(M, L, Q(-sq));
        add_scaled(M, coordinates(Y, D1), certificate_pairing(Y, L, D1));
    }
    Q alpha = certificate_pairing(Y, M, D2);
    if (alpha <= 0) return std::nullopt;
    Coefficients A = *base;
    add_scaled(A, M, Q(gamma - 1) * Q(e) / alpha);
    return A;
}

inline std::optional<Coefficients> regular_leg(const AnticanonicalPair& Y, const std::string& side1, Int e) {
    auto s = shape_of(Y);
    if (!s.cls.degenerate || !s.cls.regular || e <= 2) return std::nullopt;
    const int d1 = Y.side_index(side1);
    for (int v0 : s.cls.exceptional_vertices) {
        if (s.side_of(v0) != d1) continue;
        auto& L = s.cls.legs.at(v0);
        std::vector<int> rest;
        for (int v = 0; v < s.acs.size(); ++v)
            if (std::find(L.begin(), L.end(), v) == L.end()) rest.push_back(v);
        if (rest.size() != 1) continue;
        const Int n = static_cast<Int>(L.size()) - 1;
        Coefficients f;
        for (Int i = 0; i <= n; ++i) f[s.name(L[i])] = Q(e) + tri(i);
        f[s.name(rest[0])] = n + 1;
        return f;
    }
    return std::nullopt;
}

inline std::optional<Coefficients> regular_pair(const AnticanonicalPair& Y, const std::string& side1, Int e) {
    auto s = shape_of(Y);
    if (!s.cls.degenerate || !s.cls.regular || !s.cls.exceptional_vertices.empty() || s.acs.size() != 2) return std::nullopt;
    const int d1 = Y.side_index(side1), d2 = 1 - d1;
    // A = alpha v_a + v_b with A.D1 = e; v_a must meet both sides so that A.D2 grows with e
    for (int va = 0; va < 2; ++va) {
        const int vb = 1 - va;
        const Int i1 = s.acs.inc[va][d1], i2 = s.acs.inc[va][d2];
        if (i1 <= 0 || i2 <= 0 || (e - s.acs.inc[vb][d1]) % i1 != 0) continue;
        Coefficients f;
        f[s.name(va)] = Q((e - s.acs.inc[vb][d1]) / i1);
        f[s.name(vb)] = 1;
        if (positive_on_generators(Y, f)) return f;
    }
    return std::nullopt;
}

inline std::optional<Coefficients> singleton(const AnticanonicalPair& Y, const std::string& side1, Int e) {
    auto s = shape_of(Y);
    if (s.acs.size() != 1 || e <= 0) return std::nullopt;
    if (s.acs.inc[0][Y.side_index(side1)] != 1) return std::nullopt;
    return Coefficients{{s.name(0), Q(e)}};
}

inline std::optional<Coefficients> non_regular_leg(const AnticanonicalPair& Y, const std::string& side1, Int e) {
    auto s = shape_of(Y);
    if (s.cls.regular || s.cls.exceptional_vertices.empty() || e <= 2) return std::nullopt;
    const int d1 = Y.side_index(side1);
    for (int v0 : s.cls.exceptional_vertices) {
        auto& L = s.cls.legs.at(v0);
        if (s.side_of(v0) != d1 || static_cast<int>(L.size()) != s.acs.size()) continue;
        Coefficients f;
        for (std::size_t i = 0; i < L.size(); ++i) f[s.name(L[i])] = Q(e) + tri(static_cast<Int>(i));
        return f;
    }
    return std::nullopt;
}

}  // namespace detail

// Explicit ample divisor on one component following the recipe; verified
// strictly positive on every generator before it is returned.
inline std::optional<Coefficients> construct_ample(const AnticanonicalPair& Y, const DegreeSpec& d) {
    if (Y.boundary.size() != 2) throw UsageError("construct_ample: component is not of type d2");
    if (Y.side_index(d.side1) < 0) throw UsageError("construct_ample: unknown side " + d.side1);
    std::optional<Coefficients> f;
    switch (d.recipe) {
        case Recipe::balanced: f = detail::balanced(Y, d.side1, d.e, d.k1, d.k2); break;
        case Recipe::stretched: f = detail::stretched(Y, d.side1, d.e, d.k1, d.k2, d.gamma); break;
        case Recipe::three_halves: f = detail::three_halves(Y, d.side1, d.e, d.k1); break;
        case Recipe::regular_leg: f = detail::regular_leg(Y, d.side1, d.e); break;
        case Recipe::regular_pair: f = detail::regular_pair(Y, d.side1, d.e); break;
        case Recipe::singleton: f = detail::singleton(Y, d.side1, d.e); break;
        case Recipe::non_regular_leg: f = detail::non_regular_leg(Y, d.side1, d.e); break;
    }
    if (f && !positive_on_generators(Y, *f)) return std::nullopt;
    return f;
}

}  // namespace dnv
