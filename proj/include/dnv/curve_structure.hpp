#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pairs.hpp"

namespace dnv {

enum class TypeTag { d1, d2, d4 };

inline const char* to_string(TypeTag t) {
    switch (t) {
        case TypeTag::d1: return "d1";
        case TypeTag::d2: return "d2";
        default: return "d4";
    }
}

struct CurveStructure {
    std::vector<std::pair<std::string, Int>> vertices;
    std::vector<std::pair<int, int>> edges;
    TypeTag type_tag = TypeTag::d2;
};

struct AugmentedCurveStructure {
    CurveStructure core;
    std::vector<std::pair<std::string, Int>> boundary_vertices;
    std::vector<std::tuple<int, int, Int>> incidences;  // (core vertex, boundary vertex, pairing)

    // dense views
    std::vector<std::vector<Int>> adj;  // core x core, 1 on edges
    std::vector<std::vector<Int>> inc;  // core x boundary

    int size() const { return static_cast<int>(core.vertices.size()); }
    Int square(int v) const { return core.vertices[v].second; }
    Int degree_on_boundary(int v) const {
        Int s = 0;
        for (Int x : inc[v]) s += x;
        return s;
    }
    std::vector<int> neighbours(int v) const {
        std::vector<int> r;
        for (int w = 0; w < size(); ++w)
            if (adj[v][w]) r.push_back(w);
        return r;
    }
};

inline AugmentedCurveStructure extract(const AnticanonicalPair& Y) {
    AugmentedCurveStructure a;
    auto tr = Y.tracked();
    const int n = static_cast<int>(tr.size()), b = static_cast<int>(Y.boundary.size());
    a.core.type_tag = b == 1 ? TypeTag::d1 : b == 2 ? TypeTag::d2 : TypeTag::d4;
    for (int i : tr) a.core.vertices.push_back({Y.curves[i].name, Y.square(Y.curves[i].cls)});
    for (auto& s : Y.boundary) a.boundary_vertices.push_back({s.name, Y.square(s.cls)});
    a.adj.assign(n, std::vector<Int>(n, 0));
    a.inc.assign(n, std::vector<Int>(b, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Int p = Y.pair(Y.curves[tr[i]].cls, Y.curves[tr[j]].cls);
            if (p < 0) throw InternalError("extract: distinct tracked curves with negative pairing");
            if (p >= 2) throw InternalError("extract: tracked curves with pairing >= 2");
            if (p == 1) {
                a.core.edges.push_back({i, j});
                a.adj[i][j] = a.adj[j][i] = 1;
            }
        }
        for (int k = 0; k < b; ++k) {
            Int p = Y.pair(Y.curves[tr[i]].cls, Y.boundary[k].cls);
            if (p < 0) throw InternalError("extract: tracked curve with negative boundary pairing");
            a.inc[i][k] = p;
            if (p != 0) a.incidences.push_back({i, k, p});
        }
    }
    return a;
}

struct Classification {
    std::vector<int> exceptional_vertices;
    std::map<int, std::vector<int>> legs;
    bool degenerate = false;
    bool regular = false;
};

inline bool is_exceptional_vertex(const AugmentedCurveStructure& a, int v) {
    if (a.square(v) != -1) return false;
    int d0 = -1;
    for (std::size_t k = 0; k < a.boundary_vertices.size(); ++k)
        if (a.inc[v][k] != 0) {
            if (d0 >= 0) return false;
            d0 = static_cast<int>(k);
        }
    if (d0 < 0) return false;
    for (int w = 0; w < a.size(); ++w)
        if (w != v && a.inc[w][d0] != 0) return false;
    return a.neighbours(v).size() == 1;
}

inline std::vector<int> leg_of(const AugmentedCurveStructure& a, int ve) {
    std::vector<int> leg{ve, a.neighbours(ve).front()};
    while (true) {
        int cur = leg.back();
        if (a.degree_on_boundary(cur) != 0) break;
        int next = -1, count = 0;
        for (int w : a.neighbours(cur))
            if (std::find(leg.begin(), leg.end(), w) == leg.end()) {
                next = w;
                ++count;
            }
        if (count != 1) break;
        leg.push_back(next);
    }
    return leg;
}

// Sides glued along a smooth double curve; for type d2 all of them.
inline Classification classify(const AugmentedCurveStructure& a, const std::vector<bool>& smooth_side = {}) {
    Classification c;
    for (int v = 0; v < a.size(); ++v)
        if (is_exceptional_vertex(a, v)) c.exceptional_vertices.push_back(v);
    for (int v : c.exceptional_vertices) c.legs[v] = leg_of(a, v);
    c.degenerate = c.exceptional_vertices.empty();
    bool zero_end = false;
    for (auto& [v, leg] : c.legs) {
        int end = leg.back();
        for (std::size_t k = 0; k < a.boundary_vertices.size(); ++k) {
            bool smooth = smooth_side.empty() ? true : smooth_side[k];
            if (smooth && a.inc[end][k] == 1) c.degenerate = true;
        }
        if (a.square(end) == 0) zero_end = true;
    }
    c.regular = a.size() > 1 && !zero_end;
    // a non-regular structure counts as degenerate
    if (!c.regular) c.degenerate = true;
    return c;
}

// Coloured weighted graph used for canonical forms.
struct ColouredGraph {
    int n = 0;
    std::vector<Int> colour;
    std::vector<Int> w;  // n x n symmetric weights, 0 = no edge

    Int at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
};

namespace detail {

inline void put(std::string& s, Int x) {
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((static_cast<std::uint64_t>(x + (1 << 30)) >> (8 * (3 - i))) & 0xff));
}

// Colour refinement: cells ordered by an isomorphism-invariant signature.
inline std::vector<int> refine(const ColouredGraph& g, std::vector<int> col) {
    int cells = 0;
    {
        auto s = col;
        std::sort(s.begin(), s.end());
        cells = static_cast<int>(std::unique(s.begin(), s.end()) - s.begin());
    }
    while (true) {
        std::vector<std::pair<std::vector<Int>, int>> sig(g.n);
        for (int v = 0; v < g.n; ++v) {
            std::vector<std::pair<int, Int>> nb;
            for (int u = 0; u < g.n; ++u)
                if (u != v && g.at(v, u) != 0) nb.push_back({col[u], g.at(v, u)});
            std::sort(nb.begin(), nb.end());
            std::vector<Int> s{col[v]};
            for (auto& [c, x] : nb) {
                s.push_back(c);
                s.push_back(x);
            }
            sig[v] = {s, v};
        }
        std::vector<int> order(g.n);
        for (int v = 0; v < g.n; ++v) order[v] = v;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a].first < sig[b].first; });
        std::vector<int> nc(g.n);
        int c = 0;
        for (int i = 0; i < g.n; ++i) {
            if (i > 0 && sig[order[i]].first != sig[order[i - 1]].first) ++c;
            nc[order[i]] = c;
        }
        int ncells = g.n ? c + 1 : 0;
        col = nc;
        if (ncells == cells) return col;
        cells = ncells;
    }
}

inline std::string certificate(const ColouredGraph& g, const std::vector<int>& col) {
    std::vector<int> order(g.n);
    for (int v = 0; v < g.n; ++v) order[col[v]] = v;
    std::string s;
    put(s, g.n);
    for (int v : order) put(s, g.colour[v]);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) put(s, g.at(order[i], order[j]));
    return s;
}

inline void search(const ColouredGraph& g, std::vector<int> col, std::string& best, bool& have) {
    col = refine(g, col);
    std::vector<int> size(g.n, 0);
    for (int c : col) ++size[c];
    int target = -1;
    for (int c = 0; c < g.n; ++c)
        if (size[c] > 1) {
            target = c;
            break;
        }
    if (target < 0) {
        auto s = certificate(g, col);
        if (!have || s < best) {
            best = s;
            have = true;
        }
        return;
    }
    for (int v = 0; v < g.n; ++v) {
        if (col[v] != target) continue;
        std::vector<int> nc(g.n);
        for (int u = 0; u < g.n; ++u) nc[u] = 2 * col[u] + ((u == v || col[u] != target) ? 0 : 1);
        search(g, nc, best, have);
    }
}

}  // namespace detail

// Canonical string of a coloured graph by individualisation and refinement,
// minimised over all leaves of the search tree.
inline std::string canonical_string(const ColouredGraph& g) {
    std::vector<Int> cs = g.colour;
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    std::vector<int> col(g.n);
    for (int v = 0; v < g.n; ++v) col[v] = static_cast<int>(std::lower_bound(cs.begin(), cs.end(), g.colour[v]) - cs.begin());
    std::string best;
    bool have = false;
    detail::search(g, col, best, have);
    if (!have) detail::put(best, 0);
    return best;
}

// Boundary colours: equal colours may be permuted by an isomorphism, distinct
// colours are fixed. An empty list means every boundary vertex is fixed by position.
inline ColouredGraph to_graph(const AugmentedCurveStructure& a, std::vector<int> boundary_colours = {}) {
    const int n = a.size(), b = static_cast<int>(a.boundary_vertices.size());
    if (boundary_colours.empty())
        for (int k = 0; k < b; ++k) boundary_colours.push_back(k);
    ColouredGraph g;
    g.n = n + b;
    g.w.assign(static_cast<std::size_t>(g.n) * g.n, 0);
    for (int v = 0; v < n; ++v) g.colour.push_back(a.square(v) + 1000);
    for (int k = 0; k < b; ++k) g.colour.push_back(100000 + 1000 * boundary_colours[k] + a.boundary_vertices[k].second + 500);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g.w[static_cast<std::size_t>(i) * g.n + j] = a.adj[i][j];
        for (int k = 0; k < b; ++k) {
            g.w[static_cast<std::size_t>(i) * g.n + n + k] = a.inc[i][k];
            g.w[static_cast<std::size_t>(n + k) * g.n + i] = a.inc[i][k];
        }
    }
    return g;
}

enum class BoundaryOrder { fixed, free };

inline std::string canonical_form(const AugmentedCurveStructure& a, BoundaryOrder order) {
    std::vector<int> colours;
    for (std::size_t k = 0; k < a.boundary_vertices.size(); ++k)
        colours.push_back(order == BoundaryOrder::fixed ? static_cast<int>(k) : 0);
    return std::string(to_string(a.core.type_tag)) + canonical_string(to_graph(a, colours));
}

}  // namespace dnv
