#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace dnv {

enum class Role { root, exceptional, other };
enum class BaseTag { Y1, Y2, Y4 };

inline const char* to_string(Role r) {
    switch (r) {
        case Role::root: return "root";
        case Role::exceptional: return "exceptional";
        default: return "other";
    }
}

inline const char* to_string(BaseTag t) {
    switch (t) {
        case BaseTag::Y1: return "Y1";
        case BaseTag::Y2: return "Y2";
        default: return "Y4";
    }
}

// One curve through the anchor point of a side. `mult` is the local
// intersection number with the side there, `pm` the multiplicity of the curve
// at the anchor point.
struct AnchorEntry {
    std::string curve;
    Int mult = 1;
    Int pm = 1;
};

struct BoundarySide {
    std::string name;
    Vec cls;
    std::vector<AnchorEntry> anchor;

    const AnchorEntry* find(const std::string& c) const {
        for (auto& a : anchor)
            if (a.curve == c) return &a;
        return nullptr;
    }
    Int anchor_mult(const std::string& c) const {
        auto* a = find(c);
        return a ? a->mult : 0;
    }
};

// A triple-point slot where two boundary sides meet (the same side twice for
// the node of a nodal boundary).
struct NodeSlot {
    std::string name;
    std::string side_a, side_b;
};

// Curves are either tracked members of the curve structure or untracked curves
// sitting at a node slot. Untracked curves become tracked again when their node
// is blown up. At a merged node the bucket says where a curve goes on the next
// blow-up: 0 onto the new side, 1 or 2 onto one of the two new nodes.
struct Curve {
    std::string name;
    Vec cls;
    Role role = Role::other;
    bool tracked = true;
    std::string node;
    int bucket = 0;
    Int node_mult = 0;
    Int saved_mult = 0;
    Int saved_pm = 1;
};

struct AnticanonicalPair {
    IntersectionLattice lattice;
    BaseTag base_tag = BaseTag::Y2;
    std::vector<Curve> curves;
    std::vector<BoundarySide> boundary;  // cyclic order
    std::vector<NodeSlot> nodes;
    int next_id = 0;

    Int pair(const Vec& a, const Vec& b) const { return pairing(lattice, a, b); }
    Int square(const Vec& a) const { return pair(a, a); }

    Vec canonical_class() const {
        Vec k(static_cast<std::size_t>(lattice.rank), 0);
        for (auto& s : boundary) k = k - s.cls;
        return k;
    }

    int curve_index(const std::string& n) const {
        for (std::size_t i = 0; i < curves.size(); ++i)
            if (curves[i].name == n) return static_cast<int>(i);
        return -1;
    }
    int side_index(const std::string& n) const {
        for (std::size_t i = 0; i < boundary.size(); ++i)
            if (boundary[i].name == n) return static_cast<int>(i);
        return -1;
    }
    int node_index(const std::string& n) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].name == n) return static_cast<int>(i);
        return -1;
    }
    std::vector<int> tracked() const {
        std::vector<int> r;
        for (std::size_t i = 0; i < curves.size(); ++i)
            if (curves[i].tracked) r.push_back(static_cast<int>(i));
        return r;
    }
    std::string fresh(const std::string& prefix) { return prefix + std::to_string(++next_id); }
};

inline Int boundary_degree(const AnticanonicalPair& Y, const Vec& c) {
    Int s = 0;
    for (auto& d : Y.boundary) s = add(s, Y.pair(c, d.cls));
    return s;
}

inline void refresh_roles(AnticanonicalPair& Y) {
    for (auto& c : Y.curves) {
        Int sq = Y.square(c.cls);
        Int bd = boundary_degree(Y, c.cls);
        if (sq == -1 && bd == 1)
            c.role = Role::exceptional;
        else if (sq == -2 && bd == 0)
            c.role = Role::root;
        else
            c.role = Role::other;
    }
}

// Blow up the anchor point of a side; returns the name of the new curve.
inline std::string blow_up_at_anchor(AnticanonicalPair& Y, int side, const std::string& name) {
    auto& S = Y.boundary[side];
    std::vector<std::pair<Vec, Int>> through;
    through.push_back({S.cls, 1});
    for (auto& a : S.anchor) {
        if (a.pm >= 2 && a.mult > a.pm) throw InternalError("blow-up at an anchor with a singular tangent branch");
        through.push_back({Y.curves[Y.curve_index(a.curve)].cls, a.pm});
    }
    auto B = blow_up(Y.lattice, through, name);
    for (auto& c : Y.curves) {
        Int pm = 0;
        if (auto* a = S.find(c.name)) pm = a->pm;
        c.cls = B.transform(c.cls, pm);
    }
    for (std::size_t i = 0; i < Y.boundary.size(); ++i)
        Y.boundary[i].cls = B.transform(Y.boundary[i].cls, static_cast<int>(i) == side ? 1 : 0);
    Y.lattice = B.lattice;
    std::vector<AnchorEntry> anchor{{name, 1, 1}};
    for (auto& a : S.anchor)
        if (a.mult > a.pm) anchor.push_back({a.curve, a.mult - a.pm, 1});
    S.anchor = anchor;
    Curve E;
    E.name = name;
    E.cls = B.E;
    Y.curves.push_back(E);
    refresh_roles(Y);
    return name;
}

inline void push_all(AnticanonicalPair& Y, const BlowDownResult& D) {
    for (auto& c : Y.curves) c.cls = D.push(c.cls);
    for (auto& s : Y.boundary) s.cls = D.push(s.cls);
    Y.lattice = D.lattice;
}

inline void erase_curve(AnticanonicalPair& Y, const std::string& name) {
    Y.curves.erase(Y.curves.begin() + Y.curve_index(name));
    for (auto& s : Y.boundary)
        s.anchor.erase(std::remove_if(s.anchor.begin(), s.anchor.end(), [&](auto& a) { return a.curve == name; }),
                       s.anchor.end());
}

// Contract a tracked interior (-1)-curve passing through the anchor of a side.
inline void blow_down_at_anchor(AnticanonicalPair& Y, int side, const std::string& name) {
    int ci = Y.curve_index(name);
    if (ci < 0 || !Y.curves[ci].tracked) throw UsageError("blow_down_at_anchor: unknown or untracked curve");
    Vec C = Y.curves[ci].cls;
    auto& S = Y.boundary[side];
    if (S.anchor_mult(name) != 1 || Y.square(C) != -1)
        throw UsageError("blow_down_at_anchor: curve is not a (-1)-curve through the anchor");
    std::vector<AnchorEntry> anchor;
    for (auto& c : Y.curves) {
        if (c.name == name) continue;
        Int k = Y.pair(c.cls, C);
        if (k < 0) throw InternalError("negative pairing with a contracted curve");
        Int old = S.anchor_mult(c.name);
        if (old > 0 && k == 0) throw InternalError("anchor member misses the contracted curve");
        if (k == 0) continue;
        if (c.tracked && k >= 2) throw InternalError("tracked curve meets a contracted curve with multiplicity >= 2");
        anchor.push_back({c.name, add(old, k), k});
    }
    auto D = blow_down(Y.lattice, C);
    push_all(Y, D);
    erase_curve(Y, name);
    Y.boundary[side].anchor = anchor;
    refresh_roles(Y);
}

// Contract a boundary side of square -1. Its neighbours meet at the new node;
// if the side has a single neighbour that neighbour becomes nodal.
inline void contract_side(AnticanonicalPair& Y, int side, const std::string& node_name) {
    const int n = static_cast<int>(Y.boundary.size());
    if (n < 2) throw UsageError("contract_side: cannot contract a nodal boundary");
    BoundarySide S = Y.boundary[side];
    if (Y.square(S.cls) != -1) throw ContractionError("contract_side: side does not have square -1");
    const std::string prev = Y.boundary[(side + n - 1) % n].name;
    const std::string next = Y.boundary[(side + 1) % n].name;
    std::vector<std::string> on_side;  // node slots on S, in slot order
    for (auto& t : Y.nodes)
        if (t.side_a == S.name || t.side_b == S.name) on_side.push_back(t.name);

    for (auto& c : Y.curves) {
        Int k = Y.pair(c.cls, S.cls);
        const AnchorEntry* a = S.find(c.name);
        if (c.tracked) {
            if (a) {
                if (a->mult != k) throw InternalError("contract_side: anchor multiplicity mismatch");
                c.tracked = false;
                c.node = node_name;
                c.bucket = 0;
                c.node_mult = k;
                c.saved_mult = k;
                c.saved_pm = a->pm;
            } else if (k != 0) {
                throw InternalError("contract_side: tracked curve meets the side away from its anchor");
            }
        } else {
            auto it = std::find(on_side.begin(), on_side.end(), c.node);
            if (it != on_side.end()) {
                if (a) throw InternalError("contract_side: node curve also passes through the anchor");
                if (prev != next) throw InternalError("contract_side: node curve at a merged corner");
                c.bucket = 1 + static_cast<int>(it - on_side.begin());
                c.saved_mult = c.node_mult;
                c.node_mult = k;
                c.node = node_name;
            }
        }
    }
    auto D = blow_down(Y.lattice, S.cls);
    Y.boundary.erase(Y.boundary.begin() + side);
    push_all(Y, D);
    Y.nodes.erase(std::remove_if(Y.nodes.begin(), Y.nodes.end(),
                                 [&](auto& t) { return t.side_a == S.name || t.side_b == S.name; }),
                  Y.nodes.end());
    Y.nodes.push_back({node_name, prev, next});
    refresh_roles(Y);
}

// Blow up a node slot. A new boundary side is inserted in the cycle between
// the two sides through the node.
inline std::string blow_up_node(AnticanonicalPair& Y, const std::string& node, const std::string& side_name,
                                const std::vector<std::string>& branch_names = {}) {
    int ti = Y.node_index(node);
    if (ti < 0) throw UsageError("blow_up_node: unknown node");
    NodeSlot t = Y.nodes[ti];
    const bool self = t.side_a == t.side_b;
    std::vector<std::pair<Vec, Int>> through;
    for (auto& s : Y.boundary)
        if (s.name == t.side_a || s.name == t.side_b) through.push_back({s.cls, self ? 2 : 1});
    auto B = blow_up(Y.lattice, through, side_name);
    Y.lattice = B.lattice;
    for (auto& s : Y.boundary) {
        Int m = (s.name == t.side_a || s.name == t.side_b) ? (self ? 2 : 1) : 0;
        s.cls = B.transform(s.cls, m);
    }
    BoundarySide X;
    X.name = side_name;
    X.cls = B.E;
    for (auto& c : Y.curves) {
        if (!c.tracked && c.node == node) {
            c.cls = B.transform(c.cls, c.node_mult);
            if (c.bucket == 0) {
                c.tracked = true;
                c.node.clear();
                X.anchor.push_back({c.name, c.node_mult, c.saved_pm});
                c.node_mult = 0;
            } else {
                if (!self || branch_names.size() != 2) throw InternalError("blow_up_node: unexpected branch curve");
                c.node = branch_names[c.bucket - 1];
                c.node_mult = c.saved_mult;
                c.bucket = 0;
            }
        } else {
            c.cls = embed(c.cls);
        }
    }
    // insert X between the two sides
    const int n = static_cast<int>(Y.boundary.size());
    int pos = -1;
    for (int i = 0; i < n; ++i) {
        auto& a = Y.boundary[i].name;
        auto& b = Y.boundary[(i + 1) % n].name;
        if ((a == t.side_a && b == t.side_b) || (a == t.side_b && b == t.side_a)) {
            pos = i;
            break;
        }
    }
    if (pos < 0) throw InternalError("blow_up_node: node sides are not adjacent");
    const std::string left = Y.boundary[pos].name, right = Y.boundary[(pos + 1) % n].name;
    Y.boundary.insert(Y.boundary.begin() + pos + 1, X);
    Y.nodes.erase(Y.nodes.begin() + ti);
    if (self) {
        Y.nodes.push_back({branch_names.size() == 2 ? branch_names[0] : Y.fresh("t"), left, side_name});
        Y.nodes.push_back({branch_names.size() == 2 ? branch_names[1] : Y.fresh("t"), side_name, right});
    } else {
        Y.nodes.push_back({Y.fresh("t"), left, side_name});
        Y.nodes.push_back({Y.fresh("t"), side_name, right});
    }
    refresh_roles(Y);
    return side_name;
}

// P1 x P1 with boundary square D1 + D2 + D3 + D4 (classes f1, f2, f1, f2) and
// the two rulings through the future special points: F13 through p1, p3 and
// F24 through p2, p4.
inline AnticanonicalPair quadric_with_square() {
    AnticanonicalPair Y;
    Y.lattice = make_lattice({{0, 1}, {1, 0}}, {"f1", "f2"});
    Vec f1{1, 0}, f2{0, 1};
    Y.boundary = {{"D1", f1, {{"F13", 1, 1}}},
                  {"D2", f2, {{"F24", 1, 1}}},
                  {"D3", f1, {{"F13", 1, 1}}},
                  {"D4", f2, {{"F24", 1, 1}}}};
    Y.nodes = {{"n12", "D1", "D2"}, {"n23", "D2", "D3"}, {"n34", "D3", "D4"}, {"n41", "D4", "D1"}};
    Curve a, b;
    a.name = "F13";
    a.cls = f2;
    b.name = "F24";
    b.cls = f1;
    Y.curves = {a, b};
    return Y;
}

// n-fold blow-up in the special point of each side.
inline void fold_blow_ups(AnticanonicalPair& Y, const std::vector<int>& n) {
    for (std::size_t i = 0; i < n.size(); ++i)
        for (int j = 1; j <= n[i]; ++j)
            blow_up_at_anchor(Y, static_cast<int>(i), "E" + std::to_string(i + 1) + std::to_string(j));
}

// Give curves stable short names: roots B*, exceptional curves E*, other
// tracked curves C*, untracked node curves G*.
inline void rename_curves(AnticanonicalPair& Y) {
    std::map<std::string, std::string> ren;
    int nb = 0, ne = 0, nc = 0, ng = 0;
    for (auto& c : Y.curves) {
        std::string nn;
        if (!c.tracked)
            nn = "G" + std::to_string(++ng);
        else if (c.role == Role::root)
            nn = "B" + std::to_string(++nb);
        else if (c.role == Role::exceptional)
            nn = "E" + std::to_string(++ne);
        else
            nn = "C" + std::to_string(++nc);
        ren[c.name] = nn;
        c.name = nn;
    }
    for (auto& s : Y.boundary)
        for (auto& a : s.anchor) a.curve = ren.at(a.curve);
}

inline void rename_sides(AnticanonicalPair& Y, const std::vector<std::string>& names) {
    std::map<std::string, std::string> ren;
    for (std::size_t i = 0; i < Y.boundary.size(); ++i) {
        ren[Y.boundary[i].name] = names[i];
        Y.boundary[i].name = names[i];
    }
    for (auto& t : Y.nodes) {
        t.side_a = ren.at(t.side_a);
        t.side_b = ren.at(t.side_b);
    }
}

inline void rename_nodes(AnticanonicalPair& Y, const std::vector<std::string>& names) {
    std::map<std::string, std::string> ren;
    for (std::size_t i = 0; i < Y.nodes.size(); ++i) {
        ren[Y.nodes[i].name] = names[i];
        Y.nodes[i].name = names[i];
    }
    for (auto& c : Y.curves)
        if (!c.tracked) c.node = ren.at(c.node);
}

// Sort the curves of a freshly built pair so names follow the curve order.
inline void order_curves(AnticanonicalPair& Y) {
    std::stable_sort(Y.curves.begin(), Y.curves.end(), [](const Curve& a, const Curve& b) {
        auto rank = [](const Curve& c) { return !c.tracked ? 2 : c.role == Role::exceptional ? 1 : 0; };
        return rank(a) < rank(b);
    });
}

inline AnticanonicalPair build_Y4() {
    auto Y = quadric_with_square();
    fold_blow_ups(Y, {1, 1, 1, 1});
    Y.base_tag = BaseTag::Y4;
    order_curves(Y);
    rename_curves(Y);
    rename_nodes(Y, {"t12", "t23", "t34", "t41"});
    return Y;
}

inline AnticanonicalPair build_Y2() {
    auto Y = quadric_with_square();
    fold_blow_ups(Y, {1, 3, 1, 3});
    contract_side(Y, 0, "t1");
    contract_side(Y, Y.side_index("D3"), "t2");
    Y.base_tag = BaseTag::Y2;
    order_curves(Y);
    rename_curves(Y);
    rename_sides(Y, {"D1", "D2"});
    return Y;
}

inline AnticanonicalPair build_Y1() {
    auto Y = quadric_with_square();
    fold_blow_ups(Y, {1, 5, 1, 3});
    contract_side(Y, 0, "t1");
    contract_side(Y, Y.side_index("D3"), "t2");
    contract_side(Y, Y.side_index("D4"), "tau");
    Y.base_tag = BaseTag::Y1;
    order_curves(Y);
    rename_curves(Y);
    rename_sides(Y, {"D"});
    return Y;
}

// Dynkin type of a set of (-2)-classes, e.g. "E6" or "A2+A1".
inline std::string dynkin_type(const AnticanonicalPair& Y, const std::vector<Vec>& roots) {
    const int n = static_cast<int>(roots.size());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Int p = Y.pair(roots[i], roots[j]);
            if (p == 1) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            } else if (p != 0)
                return "?";
        }
    std::vector<int> comp(n, -1);
    std::vector<std::string> parts;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> members{s};
        comp[s] = s;
        for (std::size_t q = 0; q < members.size(); ++q)
            for (int w : adj[members[q]])
                if (comp[w] < 0) {
                    comp[w] = s;
                    members.push_back(w);
                }
        int m = static_cast<int>(members.size());
        int edges = 0, forks = 0, fork = -1;
        for (int v : members) {
            edges += static_cast<int>(adj[v].size());
            if (adj[v].size() == 3) {
                ++forks;
                fork = v;
            } else if (adj[v].size() > 3)
                return "?";
        }
        if (edges / 2 != m - 1 || forks > 1) return "?";
        if (forks == 0) {
            parts.push_back("A" + std::to_string(m));
            continue;
        }
        std::vector<int> br;
        for (int w : adj[fork]) {
            int len = 1, prev = fork, cur = w;
            while (adj[cur].size() == 2) {
                int nx = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = nx;
                ++len;
            }
            br.push_back(len);
        }
        std::sort(br.begin(), br.end());
        if (br[0] == 1 && br[1] == 1)
            parts.push_back("D" + std::to_string(m));
        else if (br[0] == 1 && br[1] == 2 && br[2] <= 4)
            parts.push_back("E" + std::to_string(m));
        else
            return "?";
    }
    std::sort(parts.begin(), parts.end(), [](const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() > b.size() : a > b;
    });
    std::string out;
    for (auto& p : parts) out += (out.empty() ? "" : "+") + p;
    return out;
}

inline std::vector<Vec> root_classes(const AnticanonicalPair& Y) {
    std::vector<Vec> r;
    for (auto& c : Y.curves)
        if (c.tracked && c.role == Role::root) r.push_back(c.cls);
    return r;
}

// Rational divisor given by coefficients over named curves.
struct RationalDivisor {
    std::map<std::string, mpq_class> coeff;
};

inline mpq_class rational_pair(const AnticanonicalPair& Y, const RationalDivisor& A, const Vec& v) {
    mpq_class s = 0;
    for (auto& [n, q] : A.coeff) s += q * static_cast<long>(Y.pair(Y.curves[Y.curve_index(n)].cls, v));
    return s;
}

// Explicit ample classes for the freshly built rigid pairs: the numbers on the
// root system plus e on the exceptional curves. For the degree-1 pair the class
// is the dual vector with value 1 on every curve.
inline RationalDivisor explicit_ample_certificate(const AnticanonicalPair& Y) {
    RationalDivisor A;
    auto tr = Y.tracked();
    bool fresh = (Y.base_tag == BaseTag::Y2 && tr.size() == 8) || (Y.base_tag == BaseTag::Y4 && tr.size() == 6) ||
                 (Y.base_tag == BaseTag::Y1 && tr.size() == 9);
    for (auto& s : Y.boundary)
        if (s.anchor.size() != 1 || Y.square(s.cls) != (Y.base_tag == BaseTag::Y1 ? 1 : -1)) fresh = false;
    if (!fresh) throw UsageError("explicit_ample_certificate: pair has been modified");
    if (Y.base_tag == BaseTag::Y4) {
        for (int i : tr) A.coeff[Y.curves[i].name] = Y.curves[i].role == Role::root ? 3 : 2;
        return A;
    }
    if (Y.base_tag == BaseTag::Y2) {
        // fork 16, short branch 7, long branches 13, 11 towards the exceptional ends
        std::vector<int> roots, exc;
        for (int i : tr) (Y.curves[i].role == Role::root ? roots : exc).push_back(i);
        auto nbrs = [&](int i) {
            std::vector<int> r;
            for (int j : roots)
                if (j != i && Y.pair(Y.curves[i].cls, Y.curves[j].cls) == 1) r.push_back(j);
            return r;
        };
        int fork = -1;
        for (int i : roots)
            if (nbrs(i).size() == 3) fork = i;
        A.coeff[Y.curves[fork].name] = 16;
        for (int b : nbrs(fork)) {
            auto nb = nbrs(b);
            if (nb.size() == 1) {
                A.coeff[Y.curves[b].name] = 7;
            } else {
                A.coeff[Y.curves[b].name] = 13;
                int o = nb[0] == fork ? nb[1] : nb[0];
                A.coeff[Y.curves[o].name] = 11;
            }
        }
        for (int i : exc) A.coeff[Y.curves[i].name] = 10;
        return A;
    }
    // degree 1: solve G f = (1, ..., 1)
    const int n = static_cast<int>(tr.size());
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M[i][j] = static_cast<long>(Y.pair(Y.curves[tr[i]].cls, Y.curves[tr[j]].cls));
        M[i][n] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (M[p][c] == 0) ++p;
        std::swap(M[p], M[c]);
        for (int r = 0; r < n; ++r)
            if (r != c && M[r][c] != 0) {
                mpq_class f = M[r][c] / M[c][c];
                for (int j = c; j <= n; ++j) M[r][j] -= f * M[c][j];
            }
    }
    for (int i = 0; i < n; ++i) A.coeff[Y.curves[tr[i]].name] = M[i][n] / M[i][i];
    return A;
}

}  // namespace dnv
