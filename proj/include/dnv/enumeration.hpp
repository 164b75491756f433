#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "keys.hpp"
#include "projectivity.hpp"

namespace dnv {

enum class ClassFilter { P, T, both };

inline const char* to_string(ClassFilter f) { return f == ClassFilter::P ? "P" : f == ClassFilter::T ? "T" : "both"; }

struct EnumeratedClass {
    std::string key;  // iso class key
    CentralFibreState state;
    bool projective = false;
    int depth = 0;  // flops from the nearest reference state
};

struct BfsResult {
    std::vector<EnumeratedClass> classes;  // in discovery order
    std::unordered_map<std::string, std::size_t> index;

    const EnumeratedClass* find(const std::string& key) const {
        auto it = index.find(key);
        return it == index.end() ? nullptr : &classes[it->second];
    }
};

// All states one flop away, type I moves first, then type II (only when both
// classes are requested), each in the deterministic order of the move lists.
inline std::vector<CentralFibreState> neighbours(const CentralFibreState& s, bool with_type_II) {
    std::vector<CentralFibreState> out;
    for (auto& m : available_type_I(s)) out.push_back(apply_type_I(s, m));
    if (with_type_II)
        for (int g : available_type_II(s)) out.push_back(apply_type_II(s, g));
    return out;
}

// Breadth-first closure from the reference states, deduplicated by iso class.
// With projective_only the closure runs over projective states (criterion
// verdict). Otherwise every state is kept and projectivity is decided by the
// exact feasibility oracle; non-projective states are expanded only up to
// `margin` flops beyond the nearest projective state, because the unfiltered
// flop graph is infinite.
inline BfsResult bfs(ClassFilter filter, bool projective_only, int margin = 8) {
    BfsResult r;
    std::deque<std::pair<std::size_t, int>> queue;  // class index, distance from the projective region
    auto visit = [&](CentralFibreState s, int depth, int dist) {
        auto key = iso_key(s);
        if (r.index.count(key)) return;
        r.index.emplace(key, r.classes.size());
        r.classes.push_back({key, std::move(s), false, depth});
        queue.push_back({r.classes.size() - 1, dist});
    };
    if (filter != ClassFilter::T) visit(build_YP(), 0, 0);
    if (filter != ClassFilter::P) visit(build_YT(), 0, 0);
    const bool type_II = filter == ClassFilter::both;
    while (!queue.empty()) {
        auto [i, dist] = queue.front();
        queue.pop_front();
        const auto& s = r.classes[i].state;
        bool proj = projective_only ? is_projective(s) : lp_feasible(s).has_value();
        r.classes[i].projective = proj;
        if (projective_only && !proj) continue;
        const int next = proj ? 0 : dist + 1;
        if (next > margin) continue;
        const int depth = r.classes[i].depth + 1;
        for (auto& t : neighbours(r.classes[i].state, type_II)) visit(std::move(t), depth, next);
    }
    if (projective_only) {
        BfsResult kept;
        for (auto& c : r.classes)
            if (c.projective) {
                kept.index.emplace(c.key, kept.classes.size());
                kept.classes.push_back(std::move(c));
            }
        return kept;
    }
    return r;
}

// Triples of integers around the P cycle and their shift/involution calculus.
using Triple = std::array<Int, 3>;

inline Triple shift(const Triple& t) { return {t[2], t[0], t[1]}; }
inline Triple involution(const Triple& t) { return {-t[1], -t[0], -t[2]}; }

// The six elements s^b and 1 s^b applied to t.
inline std::vector<Triple> triple_orbit(const Triple& t) {
    std::vector<Triple> out;
    Triple u = t;
    for (int b = 0; b < 3; ++b) {
        out.push_back(u);
        out.push_back(involution(u));
        u = shift(u);
    }
    return out;
}

inline Triple canonical_triple(const Triple& t) {
    auto o = triple_orbit(t);
    return *std::min_element(o.begin(), o.end());
}

inline bool triple_equivalent(const Triple& a, const Triple& b) { return canonical_triple(a) == canonical_triple(b); }

// n_i = D_i^2 + 1 with D_i the side of component i glued to component i+1.
// Empty unless every curve structure is regular.
inline std::optional<Triple> triple_of(const CentralFibreState& s) {
    if (s.class_tag != ClassTag::P) throw UsageError("triple_of: state is not of class P");
    for (auto p : patterns(s))
        if (p == Pattern::X) return std::nullopt;
    Triple t{};
    for (int i = 0; i < 3; ++i) t[i] = s.side_square(s.side_towards(i, (i + 1) % 3)) + 1;
    return t;
}

// Number of degenerate components of an all-regular P state.
inline int degenerate_count(const CentralFibreState& s) {
    int n = 0;
    for (auto p : patterns(s)) n += p != Pattern::N;
    return n;
}

struct TripleStratum {
    std::vector<Triple> listed;  // the explicit list, with repetitions up to equivalence
    std::set<Triple> classes;    // canonical representatives
};

// The explicit lists of all-regular P models, by number of degenerate
// components (0, 1, 2).
inline std::array<TripleStratum, 3> enumerate_regular_triples() {
    std::array<TripleStratum, 3> st;
    auto& nd = st[0].listed;
    for (Triple t : {Triple{0, 1, -1}, Triple{0, 1, 2}, Triple{0, 1, -2}, Triple{0, 2, 1}, Triple{0, 2, -2}, Triple{0, -1, 2},
                     Triple{0, -1, 1}, Triple{0, -2, 2}, Triple{1, 2, -1}, Triple{1, 2, -2}, Triple{1, -1, 2}, Triple{1, -2, 2}})
        nd.push_back(t);
    for (Int x : {1, 2})
        for (Int y = -2; y <= 2; ++y)
            if (y != x) nd.push_back({x, y, y});
    nd.push_back({0, 1, 1});
    nd.push_back({0, 2, 2});
    for (Int x = -2; x <= 2; ++x) nd.push_back({x, x, x});

    auto& one = st[1].listed;
    for (Int y = 0; y <= 2; ++y) one.push_back({3, y, -3});
    for (Int x = -2; x <= 2; ++x)
        for (Int y = -2; y <= 2; ++y)
            for (Int z = x - 6; z <= -3; ++z) one.push_back({x, y, z});

    auto& two = st[2].listed;
    for (Int x = 3; x <= 9; ++x) two.push_back({x, -3, 3});
    // M(m): (x, m, z) with -3 >= x >= m - 6 and 6 + m >= z >= 3
    for (Int m : {0, -1, -2})
        for (Int x = -3; x >= m - 6; --x)
            for (Int z = 6 + m; z >= 3; --z) two.push_back({x, m, z});
    // N(c): (x, y, c) with -3 >= y >= c - 6 and -3 >= x >= y - 6
    for (Int c = -2; c <= 2; ++c)
        for (Int y = -3; y >= c - 6; --y)
            for (Int x = -3; x >= y - 6; --x) two.push_back({x, y, c});

    for (auto& s : st)
        for (auto& t : s.listed) s.classes.insert(canonical_triple(t));
    return st;
}

// A transposition of components preserves the decorated structure.
inline bool is_symmetric(const StateShape& sh) {
    const auto id = sh.labelled_key({0, 1, 2});
    for (Perm p : {Perm{1, 0, 2}, Perm{0, 2, 1}, Perm{2, 1, 0}})
        if (sh.labelled_key(p) == id) return true;
    return false;
}

inline bool is_symmetric(const CentralFibreState& s) { return is_symmetric(StateShape(s)); }

// Class T coordinates: the squares of the two sides of the special component
// glued to the smooth components. The two models with value -8 differ in the
// smooth component, a Hirzebruch surface that is either even (primed) or odd.
struct TCoordinate {
    Int n = 0;
    bool primed = false;
    auto operator<=>(const TCoordinate&) const = default;
    std::string str() const { return std::to_string(n) + (primed ? "'" : ""); }
};

inline bool lattice_even(const IntersectionLattice& L) {
    for (int i = 0; i < L.rank; ++i)
        if (L.at(i, i) % 2 != 0) return false;
    return true;
}

inline std::array<TCoordinate, 2> t_coordinates(const CentralFibreState& s) {
    if (s.class_tag != ClassTag::T) throw UsageError("t_coordinates: state is not of class T");
    std::vector<TCoordinate> out;
    for (auto& g : s.gluings) {
        if (g.kind == GlueKind::self_glued) continue;
        const SideRef& mine = g.side_a.comp == s.special ? g.side_a : g.side_b;
        const SideRef& other = g.side_a.comp == s.special ? g.side_b : g.side_a;
        TCoordinate c{s.side_square(mine), false};
        if (c.n == -8) c.primed = lattice_even(s.components[other.comp].lattice);
        out.push_back(c);
    }
    if (out.size() != 2) throw InternalError("t_coordinates: expected two nodal gluings");
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return b < a; });
    return {out[0], out[1]};
}

// Regularity pattern of a P state as a sorted string over {N, R, X}.
inline std::string pattern_string(const CentralFibreState& s) {
    std::string k;
    for (auto p : patterns(s)) k += to_char(p);
    std::sort(k.begin(), k.end());
    return k;
}

}  // namespace dnv
