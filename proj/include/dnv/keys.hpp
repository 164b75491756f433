#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "degeneration.hpp"

namespace dnv {

using Perm = std::array<int, 3>;  // old label -> new label

inline std::vector<Perm> all_perms() {
    std::vector<Perm> out;
    Perm p{0, 1, 2};
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Decorated data of a state that keys are computed from.
struct StateShape {
    ClassTag tag = ClassTag::P;
    int special = -1;
    std::array<AugmentedCurveStructure, 3> acs;
    std::array<std::vector<int>, 3> partner;  // per side: partner component, or -1 for the self-glued pair

    explicit StateShape(const CentralFibreState& s) : tag(s.class_tag), special(s.special) {
        for (int c = 0; c < 3; ++c) {
            auto& Y = s.components[c];
            acs[c] = extract(Y);
            for (auto& side : Y.boundary) {
                auto& g = s.gluings[s.gluing_of({c, side.name})];
                partner[c].push_back(g.kind == GlueKind::self_glued ? -1 : s.partner({c, side.name}).comp);
            }
        }
    }

    mutable std::map<std::pair<int, std::vector<int>>, std::string> cache;

    std::string component_form(int c, const Perm& p) const {
        std::vector<int> colours;
        for (int q : partner[c]) colours.push_back(q < 0 ? 3 : p[q]);
        auto key = std::make_pair(c, colours);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        auto f = canonical_string(to_graph(acs[c], colours));
        cache.emplace(key, f);
        return f;
    }

    std::string labelled_key(const Perm& p) const {
        std::string k = to_string(tag);
        if (tag == ClassTag::T) k += static_cast<char>('0' + p[special]);
        std::array<int, 3> inv{};
        for (int c = 0; c < 3; ++c) inv[p[c]] = c;
        for (int l = 0; l < 3; ++l) {
            auto f = component_form(inv[l], p);
            k += '|';
            k += std::to_string(f.size());
            k += ':';
            k += f;
        }
        return k;
    }
};

inline std::string labelled_key(const CentralFibreState& s) { return StateShape(s).labelled_key({0, 1, 2}); }

inline std::string iso_key(const StateShape& sh) {
    std::string best;
    for (auto& p : all_perms()) {
        auto k = sh.labelled_key(p);
        if (best.empty() || k < best) best = k;
    }
    return best;
}

inline std::string iso_key(const CentralFibreState& s) { return iso_key(StateShape(s)); }

// Number of distinct labelled versions of the class: 6 / |stabiliser|.
inline int orbit_length(const StateShape& sh) {
    std::set<std::string> ks;
    for (auto& p : all_perms()) ks.insert(sh.labelled_key(p));
    return static_cast<int>(ks.size());
}

inline int orbit_length(const CentralFibreState& s) { return orbit_length(StateShape(s)); }

inline std::set<std::string> labelled_keys(const StateShape& sh) {
    std::set<std::string> ks;
    for (auto& p : all_perms()) ks.insert(sh.labelled_key(p));
    return ks;
}

}  // namespace dnv
