#pragma once

#include <array>
#include <string>
#include <vector>

#include "curve_structure.hpp"

namespace dnv {

enum class ClassTag { P, T };
enum class GlueKind { smooth, nodal, self_glued };

inline const char* to_string(ClassTag t) { return t == ClassTag::P ? "P" : "T"; }
inline const char* to_string(GlueKind k) {
    switch (k) {
        case GlueKind::smooth: return "smooth";
        case GlueKind::nodal: return "nodal";
        default: return "self_glued";
    }
}

struct SideRef {
    int comp = 0;
    std::string side;
    bool operator==(const SideRef&) const = default;
};

struct GluingRecord {
    SideRef side_a, side_b;
    Int conserved_sum = -2;
    GlueKind kind = GlueKind::smooth;
};

struct CentralFibreState {
    ClassTag class_tag = ClassTag::P;
    std::array<AnticanonicalPair, 3> components;
    std::vector<GluingRecord> gluings;
    int special = -1;

    const BoundarySide& side(const SideRef& r) const {
        auto& Y = components[r.comp];
        return Y.boundary[Y.side_index(r.side)];
    }
    Int side_square(const SideRef& r) const { return components[r.comp].square(side(r).cls); }

    int gluing_of(const SideRef& r) const {
        for (std::size_t g = 0; g < gluings.size(); ++g)
            if (gluings[g].side_a == r || gluings[g].side_b == r) return static_cast<int>(g);
        throw InternalError("side without gluing record");
    }
    SideRef partner(const SideRef& r) const {
        auto& g = gluings[gluing_of(r)];
        return g.side_a == r ? g.side_b : g.side_a;
    }
    // the side of component i glued to component j (class P only)
    SideRef side_towards(int i, int j) const {
        for (auto& g : gluings) {
            if (g.side_a.comp == i && g.side_b.comp == j) return g.side_a;
            if (g.side_b.comp == i && g.side_a.comp == j) return g.side_b;
        }
        throw UsageError("components are not glued");
    }
};

struct FlopMove {
    int comp = 0;
    std::string side;
    std::string curve;
    bool operator==(const FlopMove&) const = default;
};

inline std::string unused_name(const AnticanonicalPair& Y, const std::string& prefix) {
    for (int i = 1;; ++i) {
        std::string n = prefix + std::to_string(i);
        if (Y.curve_index(n) < 0 && Y.side_index(n) < 0 && Y.node_index(n) < 0) return n;
    }
}

inline CentralFibreState build_YP() {
    CentralFibreState s;
    s.class_tag = ClassTag::P;
    for (auto& Y : s.components) Y = build_Y2();
    // side D2 of component i is glued to side D1 of component i+1
    for (int i = 0; i < 3; ++i) s.gluings.push_back({{i, "D2"}, {(i + 1) % 3, "D1"}, -2, GlueKind::smooth});
    return s;
}

inline CentralFibreState build_YT() {
    CentralFibreState s;
    s.class_tag = ClassTag::T;
    s.components[0] = build_Y4();
    s.components[1] = build_Y1();
    s.components[2] = build_Y1();
    s.special = 0;
    s.gluings.push_back({{0, "D1"}, {0, "D3"}, -2, GlueKind::self_glued});
    s.gluings.push_back({{0, "D2"}, {1, "D"}, 0, GlueKind::nodal});
    s.gluings.push_back({{0, "D4"}, {2, "D"}, 0, GlueKind::nodal});
    return s;
}

inline std::vector<FlopMove> available_type_I(const CentralFibreState& s) {
    std::vector<FlopMove> out;
    for (int c = 0; c < 3; ++c) {
        auto& Y = s.components[c];
        for (auto& side : Y.boundary) {
            if (s.gluings[s.gluing_of({c, side.name})].kind == GlueKind::self_glued) continue;
            for (auto& a : side.anchor) {
                if (a.mult != 1) continue;
                auto& C = Y.curves[Y.curve_index(a.curve)];
                if (!C.tracked || Y.square(C.cls) != -1) continue;
                out.push_back({c, side.name, C.name});
            }
        }
    }
    return out;
}

inline CentralFibreState apply_type_I(const CentralFibreState& s, const FlopMove& m) {
    bool ok = false;
    for (auto& x : available_type_I(s)) ok = ok || x == m;
    if (!ok) throw UsageError("apply_type_I: move is not available");
    CentralFibreState t = s;
    SideRef p = s.partner({m.comp, m.side});
    auto& donor = t.components[m.comp];
    blow_down_at_anchor(donor, donor.side_index(m.side), m.curve);
    auto& recv = t.components[p.comp];
    blow_up_at_anchor(recv, recv.side_index(p.side), unused_name(recv, "x"));
    return t;
}

inline std::vector<int> available_type_II(const CentralFibreState& s) {
    std::vector<int> out;
    for (std::size_t g = 0; g < s.gluings.size(); ++g) {
        auto& r = s.gluings[g];
        bool kind_ok = s.class_tag == ClassTag::P ? r.kind == GlueKind::smooth : r.kind == GlueKind::self_glued;
        if (kind_ok && s.side_square(r.side_a) == -1 && s.side_square(r.side_b) == -1) out.push_back(static_cast<int>(g));
    }
    return out;
}

inline CentralFibreState apply_type_II(const CentralFibreState& s, int g) {
    bool ok = false;
    for (int x : available_type_II(s)) ok = ok || x == g;
    if (!ok) throw UsageError("apply_type_II: gluing is not available");
    CentralFibreState t = s;
    const GluingRecord G = s.gluings[g];
    t.gluings.erase(t.gluings.begin() + g);
    if (s.class_tag == ClassTag::P) {
        const int i = G.side_a.comp, j = G.side_b.comp, k = 3 - i - j;
        for (auto [c, side] : {std::pair{i, G.side_a.side}, std::pair{j, G.side_b.side}}) {
            auto& Y = t.components[c];
            contract_side(Y, Y.side_index(side), unused_name(Y, "tau"));
            Y.base_tag = BaseTag::Y1;
        }
        auto& Z = t.components[k];
        std::vector<std::string> corners;
        for (auto& n : Z.nodes) corners.push_back(n.name);
        std::string x1 = unused_name(Z, "X");
        blow_up_node(Z, corners[0], x1);
        std::string x2 = unused_name(Z, "X");
        blow_up_node(Z, corners[1], x2);
        Z.base_tag = BaseTag::Y4;
        for (auto& r : t.gluings) {
            r.kind = GlueKind::nodal;
            r.conserved_sum = 0;
        }
        t.gluings.push_back({{k, x1}, {k, x2}, -2, GlueKind::self_glued});
        t.class_tag = ClassTag::T;
        t.special = k;
    } else {
        const int k = s.special, i = (k + 1) % 3, j = (k + 2) % 3;
        auto& Z = t.components[k];
        for (auto& side : {G.side_a.side, G.side_b.side}) contract_side(Z, Z.side_index(side), unused_name(Z, "t"));
        Z.base_tag = BaseTag::Y2;
        std::array<std::string, 3> fresh;
        for (int c : {i, j}) {
            auto& Y = t.components[c];
            std::string tau = Y.nodes.at(0).name;
            std::string b1 = unused_name(Y, "t");
            std::string b2 = b1 + "b";
            std::string X = unused_name(Y, "X");
            blow_up_node(Y, tau, X, {b1, b2});
            Y.base_tag = BaseTag::Y2;
            fresh[c] = X;
        }
        for (auto& r : t.gluings) {
            r.kind = GlueKind::smooth;
            r.conserved_sum = -2;
        }
        t.gluings.push_back({{i, fresh[i]}, {j, fresh[j]}, -2, GlueKind::smooth});
        t.class_tag = ClassTag::P;
        t.special = -1;
    }
    return t;
}

// Structural invariants; returns a description of the first violation, or "".
inline std::string check_state(const CentralFibreState& s) {
    std::size_t curves = 0;
    int ranks = 0;
    for (int c = 0; c < 3; ++c) {
        auto& Y = s.components[c];
        auto tr = Y.tracked();
        curves += tr.size();
        ranks += Y.lattice.rank;
        if (static_cast<int>(tr.size()) != Y.lattice.rank) return "tracked count differs from rank";
        std::vector<Vec> cls;
        for (int i : tr) cls.push_back(Y.curves[i].cls);
        if (gram_determinant(Y.lattice, cls) == 0) return "tracked curves are not a Q-basis";
        auto K = Y.canonical_class();
        if (Y.square(K) != 10 - Y.lattice.rank) return "Noether identity fails";
        for (auto& side : Y.boundary)
            for (auto& cv : Y.curves) {
                Int p = Y.pair(cv.cls, side.cls);
                Int a = side.anchor_mult(cv.name);
                if (cv.tracked && p != a) return "tracked curve meets a side away from its anchor";
                if (!cv.tracked && p < a) return "node curve pairing below its anchor multiplicity";
            }
        for (auto& cv : Y.curves)
            if (cv.tracked && Y.pair(cv.cls, K) != -2 - Y.square(cv.cls)) return "adjunction fails";
    }
    if (curves != 24) return "interior curve count is not 24";
    if (ranks - static_cast<int>(s.gluings.size()) != 21) return "Picard rank count is not 21";
    for (auto& g : s.gluings)
        if (s.side_square(g.side_a) + s.side_square(g.side_b) != g.conserved_sum) return "conserved sum violated";
    return "";
}

}  // namespace dnv
