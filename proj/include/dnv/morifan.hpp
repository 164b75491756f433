#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "enumeration.hpp"

namespace dnv {

enum class FlopType { I, II };

inline const char* to_string(FlopType t) { return t == FlopType::I ? "I" : "II"; }

// Component positions stay fixed; automorphisms of the state act trivially on
// this key, so a class has as many labelled keys as its orbit length.
inline std::string labelled_state_key(const StateShape& sh) { return sh.labelled_key({0, 1, 2}); }

struct FlopNode {
    std::string key;
    std::string iso;
    ClassTag tag = ClassTag::P;
    CentralFibreState state;
};

struct FlopEdge {
    int a = 0, b = 0;  // a < b
    FlopType type = FlopType::I;
    std::string move;  // descriptor of one move realising the edge, read from node a
};

struct FlopGraph {
    std::vector<FlopNode> nodes;  // in discovery order
    std::vector<FlopEdge> edges;  // sorted by (a, b, type)
    std::unordered_map<std::string, int> index;
    bool reverse_consistent = true;  // every move has a move back

    int find(const std::string& key) const {
        auto it = index.find(key);
        return it == index.end() ? -1 : it->second;
    }
};

inline std::string describe(const FlopMove& m) { return "I c" + std::to_string(m.comp) + " " + m.side + " " + m.curve; }

inline std::string describe_type_II(const CentralFibreState& s, int g) {
    auto& r = s.gluings[g];
    return "II c" + std::to_string(r.side_a.comp) + " " + r.side_a.side + " / c" + std::to_string(r.side_b.comp) + " " + r.side_b.side;
}

// Breadth-first over projective labelled states from the labelled reference
// states, with an edge for every projective flop.
inline FlopGraph build_flop_graph() {
    FlopGraph g;
    std::deque<int> queue;
    std::set<std::tuple<int, int, FlopType>> directed;
    std::map<std::tuple<int, int, FlopType>, std::string> moves;
    auto node_of = [&](CentralFibreState s) {
        StateShape sh(s);
        auto key = labelled_state_key(sh);
        auto it = g.index.find(key);
        if (it != g.index.end()) return it->second;
        const int id = static_cast<int>(g.nodes.size());
        g.index.emplace(key, id);
        g.nodes.push_back({key, iso_key(sh), s.class_tag, std::move(s)});
        queue.push_back(id);
        return id;
    };
    node_of(build_YP());
    node_of(build_YT());
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        const CentralFibreState s = g.nodes[u].state;
        auto link = [&](CentralFibreState t, FlopType type, const std::string& what) {
            if (!is_projective(t)) return;
            const int v = node_of(std::move(t));
            directed.insert({u, v, type});
            auto k = std::make_tuple(std::min(u, v), std::max(u, v), type);
            if (u <= v && !moves.count(k)) moves[k] = what;
            if (u > v && !moves.count(k)) moves[k] = what + " (reverse)";
        };
        for (auto& m : available_type_I(s)) link(apply_type_I(s, m), FlopType::I, describe(m));
        for (int gi : available_type_II(s)) link(apply_type_II(s, gi), FlopType::II, describe_type_II(s, gi));
    }
    for (auto& [u, v, type] : directed)
        if (!directed.count({v, u, type})) g.reverse_consistent = false;
    for (auto& [k, what] : moves) g.edges.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), what});
    return g;
}

struct ConeCensus {
    long total = 0, P = 0, T = 0;
    long orbits = 0, orbits_P = 0, orbits_T = 0;
    std::map<int, long> by_orbit_length;  // orbit length -> number of classes
};

// Sum of orbit lengths over the projective iso classes.
inline ConeCensus cone_census(const BfsResult& classes) {
    ConeCensus c;
    for (auto& e : classes.classes) {
        const long ol = orbit_length(e.state);
        c.total += ol;
        ++c.orbits;
        ++c.by_orbit_length[static_cast<int>(ol)];
        if (e.state.class_tag == ClassTag::P) {
            c.P += ol;
            ++c.orbits_P;
        } else {
            c.T += ol;
            ++c.orbits_T;
        }
    }
    return c;
}

inline ConeCensus cone_census() { return cone_census(bfs(ClassFilter::both, true)); }

struct FanComponent {
    std::vector<int> nodes;
    long P = 0, T = 0;
    bool contains_YP = false;
    std::map<int, long> classes_by_multiplicity;  // labelled nodes per iso class -> number of classes
};

// Connected components after deleting the type II edges, largest first.
inline std::vector<FanComponent> secondary_fan(const FlopGraph& g) {
    const int n = static_cast<int>(g.nodes.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& e : g.edges)
        if (e.type == FlopType::I) parent[root(e.a)] = root(e.b);
    std::map<int, FanComponent> by_root;
    for (int v = 0; v < n; ++v) by_root[root(v)].nodes.push_back(v);
    const int yp = g.find(labelled_state_key(StateShape(build_YP())));
    std::vector<FanComponent> out;
    for (auto& [r, c] : by_root) {
        std::map<std::string, int> per_class;
        for (int v : c.nodes) {
            (g.nodes[v].tag == ClassTag::P ? c.P : c.T) += 1;
            ++per_class[g.nodes[v].iso];
            c.contains_YP = c.contains_YP || v == yp;
        }
        for (auto& [k, m] : per_class) ++c.classes_by_multiplicity[m];
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.nodes.size() > b.nodes.size(); });
    return out;
}

// Nodes reachable from the first node over all edges.
inline bool connected(const FlopGraph& g) {
    if (g.nodes.empty()) return true;
    std::vector<std::vector<int>> adj(g.nodes.size());
    for (auto& e : g.edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::vector<bool> seen(g.nodes.size());
    std::deque<int> q{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                q.push_back(v);
            }
    }
    return count == g.nodes.size();
}

}  // namespace dnv
