#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "degeneration.hpp"

namespace dnv {

inline constexpr const char* state_schema = "dnv.state/1";

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using json = nlohmann::ordered_json;

template <class E>
E enum_from(const std::string& s, std::initializer_list<E> all, const char* what) {
    for (E e : all)
        if (s == to_string(e)) return e;
    throw ParseError(std::string("unknown ") + what + " '" + s + "'");
}

inline json side_ref_json(const SideRef& r) { return {{"component", r.comp}, {"side", r.side}}; }

inline SideRef side_ref_from(const json& j) { return {j.at("component").get<int>(), j.at("side").get<std::string>()}; }

inline json pair_json(const AnticanonicalPair& Y) {
    json j;
    j["base_tag"] = to_string(Y.base_tag);
    j["rank"] = Y.lattice.rank;
    j["gram"] = Y.lattice.gram;
    j["basis_names"] = Y.lattice.basis_names;
    j["next_id"] = Y.next_id;
    json curves = json::array();
    for (auto& c : Y.curves) {
        json e{{"name", c.name}, {"coeffs", c.cls}, {"role", to_string(c.role)}, {"square", Y.square(c.cls)}, {"tracked", c.tracked}};
        if (!c.tracked) {
            e["node"] = c.node;
            e["bucket"] = c.bucket;
            e["node_mult"] = c.node_mult;
            e["saved_mult"] = c.saved_mult;
            e["saved_pm"] = c.saved_pm;
        }
        curves.push_back(std::move(e));
    }
    j["curves"] = std::move(curves);
    json sides = json::array();
    for (auto& d : Y.boundary) {
        json anchor = json::array();
        for (auto& a : d.anchor) anchor.push_back({{"curve", a.curve}, {"mult", a.mult}, {"pm", a.pm}});
        json nodes = json::array();
        for (auto& n : Y.nodes)
            if (n.side_a == d.name || n.side_b == d.name) nodes.push_back(n.name);
        sides.push_back({{"name", d.name}, {"coeffs", d.cls}, {"square", Y.square(d.cls)}, {"anchor", anchor}, {"nodes", nodes}});
    }
    j["boundary"] = std::move(sides);
    json slots = json::array();
    for (auto& n : Y.nodes) slots.push_back({{"name", n.name}, {"side_a", n.side_a}, {"side_b", n.side_b}});
    j["node_slots"] = std::move(slots);
    return j;
}

inline AnticanonicalPair pair_from(const json& j) {
    AnticanonicalPair Y;
    Y.base_tag = enum_from(j.at("base_tag").get<std::string>(), {BaseTag::Y1, BaseTag::Y2, BaseTag::Y4}, "base tag");
    const int rank = j.at("rank").get<int>();
    auto gram = j.at("gram").get<Vec>();
    auto names = j.at("basis_names").get<std::vector<std::string>>();
    if (rank < 0 || gram.size() != static_cast<std::size_t>(rank) * rank) throw ParseError("gram size does not match rank");
    std::vector<std::vector<Int>> rows(rank);
    for (int i = 0; i < rank; ++i) rows[i].assign(gram.begin() + i * rank, gram.begin() + (i + 1) * rank);
    try {
        Y.lattice = make_lattice(rows, names);
    } catch (const UsageError& e) {
        throw ParseError(e.what());
    }
    Y.next_id = j.value("next_id", 0);
    auto cls = [&](const json& c) {
        auto v = c.get<Vec>();
        if (v.size() != static_cast<std::size_t>(rank)) throw ParseError("class has wrong length");
        return v;
    };
    for (auto& e : j.at("curves")) {
        Curve c;
        c.name = e.at("name").get<std::string>();
        c.cls = cls(e.at("coeffs"));
        c.role = enum_from(e.at("role").get<std::string>(), {Role::root, Role::exceptional, Role::other}, "role");
        c.tracked = e.at("tracked").get<bool>();
        if (!c.tracked) {
            c.node = e.at("node").get<std::string>();
            c.bucket = e.at("bucket").get<int>();
            c.node_mult = e.at("node_mult").get<Int>();
            c.saved_mult = e.at("saved_mult").get<Int>();
            c.saved_pm = e.at("saved_pm").get<Int>();
        }
        if (e.contains("square") && e["square"].get<Int>() != Y.square(c.cls))
            throw ParseError("stated square of curve " + c.name + " does not match the gram matrix");
        Y.curves.push_back(std::move(c));
    }
    for (auto& e : j.at("boundary")) {
        BoundarySide d;
        d.name = e.at("name").get<std::string>();
        d.cls = cls(e.at("coeffs"));
        for (auto& a : e.at("anchor")) d.anchor.push_back({a.at("curve").get<std::string>(), a.at("mult").get<Int>(), a.value("pm", Int(1))});
        if (e.contains("square") && e["square"].get<Int>() != Y.square(d.cls))
            throw ParseError("stated square of side " + d.name + " does not match the gram matrix");
        Y.boundary.push_back(std::move(d));
    }
    for (auto& e : j.at("node_slots"))
        Y.nodes.push_back({e.at("name").get<std::string>(), e.at("side_a").get<std::string>(), e.at("side_b").get<std::string>()});
    return Y;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const CentralFibreState& s) {
    detail::json j;
    j["schema"] = state_schema;
    j["class"] = to_string(s.class_tag);
    j["special"] = s.special;
    detail::json comps = detail::json::array();
    for (auto& Y : s.components) comps.push_back(detail::pair_json(Y));
    j["components"] = std::move(comps);
    detail::json glue = detail::json::array();
    for (auto& g : s.gluings)
        glue.push_back({{"a", detail::side_ref_json(g.side_a)},
                        {"b", detail::side_ref_json(g.side_b)},
                        {"kind", to_string(g.kind)},
                        {"conserved_sum", g.conserved_sum}});
    j["gluings"] = std::move(glue);
    return j;
}

inline std::string emit_document(const CentralFibreState& s) { return to_json(s).dump(2) + "\n"; }

// Reads a state document and validates it against the state invariants.
inline CentralFibreState parse_document(const std::string& text) {
    detail::json j;
    try {
        j = detail::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        if (j.value("schema", std::string()) != state_schema) throw ParseError(std::string("expected schema ") + state_schema);
        CentralFibreState s;
        s.class_tag = detail::enum_from(j.at("class").get<std::string>(), {ClassTag::P, ClassTag::T}, "class");
        s.special = j.value("special", -1);
        auto& comps = j.at("components");
        if (comps.size() != 3) throw ParseError("expected three components");
        for (int c = 0; c < 3; ++c) s.components[c] = detail::pair_from(comps[c]);
        for (auto& g : j.at("gluings"))
            s.gluings.push_back({detail::side_ref_from(g.at("a")), detail::side_ref_from(g.at("b")), g.at("conserved_sum").get<Int>(),
                                 detail::enum_from(g.at("kind").get<std::string>(),
                                                   {GlueKind::smooth, GlueKind::nodal, GlueKind::self_glued}, "gluing kind")});
        for (auto& g : s.gluings)
            for (auto* r : {&g.side_a, &g.side_b})
                if (r->comp < 0 || r->comp > 2 || s.components[r->comp].side_index(r->side) < 0)
                    throw ParseError("gluing refers to an unknown side");
        auto err = check_state(s);
        if (!err.empty()) throw ParseError("state invariant violated: " + err);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid document: ") + e.what());
    } catch (const UsageError& e) {
        throw ParseError(std::string("inconsistent document: ") + e.what());
    }
}

}  // namespace dnv
