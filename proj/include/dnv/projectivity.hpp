#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "degeneration.hpp"
#include "ample.hpp"
#include "simplex.hpp"

namespace dnv {

struct UncoveredCase : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool criterion_T(const CentralFibreState& s) {
    if (s.class_tag != ClassTag::T) throw UsageError("criterion_T: state is not of class T");
    for (auto& g : s.gluings)
        if (g.kind == GlueKind::self_glued) return s.side_square(g.side_a) == -1 && s.side_square(g.side_b) == -1;
    throw InternalError("criterion_T: no self-glued record");
}

enum class Pattern { N, R, X };  // non-degenerate, degenerate and regular, non-regular

inline char to_char(Pattern p) { return p == Pattern::N ? 'N' : p == Pattern::R ? 'R' : 'X'; }

struct ComponentView {
    AugmentedCurveStructure acs;
    Classification cls;
    Pattern pattern = Pattern::N;
};

inline ComponentView view_of(const AnticanonicalPair& Y) {
    ComponentView v;
    v.acs = extract(Y);
    v.cls = classify(v.acs);
    v.pattern = !v.cls.degenerate ? Pattern::N : v.cls.regular ? Pattern::R : Pattern::X;
    return v;
}

// v_D . D for the unique vertex of a non-regular structure meeting side D.
inline Int vertex_degree_on(const ComponentView& v, int side) {
    Int found = 0;
    int count = 0;
    for (int w = 0; w < v.acs.size(); ++w)
        if (v.acs.inc[w][side] != 0) {
            found = v.acs.inc[w][side];
            ++count;
        }
    if (count != 1) throw UncoveredCase("non-regular structure without a unique vertex on a side");
    return found;
}

struct PVerdict {
    bool projective = false;
    std::string rule;                  // which case of the analysis decided
    std::array<int, 3> roles{0, 1, 2};  // components playing Y1, Y2, Y3 in that case
};

inline std::array<Pattern, 3> patterns(const CentralFibreState& s) {
    std::array<Pattern, 3> p{};
    for (int c = 0; c < 3; ++c) p[c] = view_of(s.components[c]).pattern;
    return p;
}

// Side of component i towards j, as index into its boundary.
inline int side_idx(const CentralFibreState& s, int i, int j) {
    return s.components[i].side_index(s.side_towards(i, j).side);
}

inline PVerdict criterion_P_detail(const CentralFibreState& s) {
    if (s.class_tag != ClassTag::P) throw UsageError("criterion_P: state is not of class P");
    std::array<ComponentView, 3> v;
    for (int c = 0; c < 3; ++c) v[c] = view_of(s.components[c]);
    int nN = 0, nX = 0;
    for (auto& x : v) {
        nN += x.pattern == Pattern::N;
        nX += x.pattern == Pattern::X;
    }
    auto sq = [&](int i, int j) { return s.side_square(s.side_towards(i, j)); };
    auto vd = [&](int i, int j) { return vertex_degree_on(v[i], side_idx(s, i, j)); };
    PVerdict out;
    if (nN == 0) {
        out.rule = "all degenerate";
        return out;
    }
    if (nX == 0) {
        out.rule = "all regular, one non-degenerate";
        out.projective = true;
        for (int c = 0; c < 3; ++c)
            if (v[c].pattern == Pattern::N) out.roles = {c, (c + 1) % 3, (c + 2) % 3};
        return out;
    }
    auto find = [&](Pattern p, int skip = -1) {
        for (int c = 0; c < 3; ++c)
            if (c != skip && v[c].pattern == p) return c;
        return -1;
    };
    if (nN == 1 && nX == 2) {
        int a = find(Pattern::N), b = find(Pattern::X), c = find(Pattern::X, b);
        Int db = vd(b, a), dc = vd(c, a);
        if (db == 2 && dc == 2) {
            out.rule = "N X X, both vertices of degree 2";
            out.projective = true;
            out.roles = {a, b, c};
            return out;
        }
        if (db == 1 && dc == 2) {
            out.rule = "N X X, one vertex of degree 1";
            out.roles = {a, b, c};
            out.projective = sq(a, b) <= 0;
            return out;
        }
        if (db == 2 && dc == 1) {
            out.rule = "N X X, one vertex of degree 1";
            out.roles = {a, c, b};
            out.projective = sq(a, c) <= 0;
            return out;
        }
        throw UncoveredCase("N X X with both vertices of degree 1");
    }
    if (nN == 1 && nX == 1) {
        int a = find(Pattern::N), b = find(Pattern::X), c = find(Pattern::R);
        out.roles = {a, b, c};
        Int d = vd(b, a);
        if (d == 1) {
            out.rule = "N X R, vertex of degree 1";
            out.projective = sq(a, b) <= 0;
        } else if (d == 2) {
            out.rule = "N X R, vertex of degree 2";
            out.projective = sq(a, c) <= 0;
        } else {
            throw UncoveredCase("N X R with vertex degree outside {1, 2}");
        }
        return out;
    }
    if (nN == 2 && nX == 1) {
        int x = find(Pattern::X), b = find(Pattern::N), c = find(Pattern::N, b);
        if (vd(x, b) == 2) {
            out.roles = {x, b, c};
        } else if (vd(x, c) == 2) {
            out.roles = {x, c, b};
        } else {
            throw UncoveredCase("X N N without a vertex of degree 2");
        }
        out.rule = "X N N";
        out.projective = true;
        return out;
    }
    throw UncoveredCase("pattern outside the case analysis");
}

inline bool criterion_P(const CentralFibreState& s) { return criterion_P_detail(s).projective; }

// Some component has both boundary squares at most 1.
inline bool squares_criterion(const CentralFibreState& s) {
    for (int c = 0; c < 3; ++c) {
        bool ok = true;
        for (auto& d : s.components[c].boundary) ok = ok && s.components[c].square(d.cls) <= 1;
        if (ok) return true;
    }
    return false;
}

inline bool is_projective(const CentralFibreState& s) {
    return s.class_tag == ClassTag::T ? criterion_T(s) : criterion_P(s);
}

// Per-component rational coefficients over the tracked curves, with a positive
// integer scale that clears all denominators.
struct AmpleCertificate {
    std::array<Coefficients, 3> coeff;
    Q scale = 1;
};

inline Q certificate_degree(const CentralFibreState& s, const AmpleCertificate& A, const SideRef& r) {
    return certificate_pairing(s.components[r.comp], A.coeff[r.comp], s.side(r).cls);
}

// Empty string if the certificate is strictly positive on every tracked curve
// and side and matches degrees across every gluing.
inline std::string check_certificate(const CentralFibreState& s, const AmpleCertificate& A) {
    for (int c = 0; c < 3; ++c) {
        auto& Y = s.components[c];
        for (int i : Y.tracked())
            if (certificate_pairing(Y, A.coeff[c], Y.curves[i].cls) <= 0) return "not positive on curve " + Y.curves[i].name;
        for (auto& d : Y.boundary)
            if (certificate_pairing(Y, A.coeff[c], d.cls) <= 0) return "not positive on side " + d.name;
        for (auto& [n, q] : A.coeff[c]) {
            int k = Y.curve_index(n);
            if (k < 0 || !Y.curves[k].tracked) return "coefficient on an unknown curve " + n;
        }
    }
    for (auto& g : s.gluings)
        if (certificate_degree(s, A, g.side_a) != certificate_degree(s, A, g.side_b)) return "degrees differ across a gluing";
    return "";
}

namespace detail {

// Solve G x = b exactly (G nonsingular).
inline std::vector<Q> solve(std::vector<std::vector<Q>> G, std::vector<Q> b) {
    const int n = static_cast<int>(b.size());
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && G[p][c] == 0) ++p;
        if (p == n) throw InternalError("singular curve Gram matrix");
        std::swap(G[p], G[c]);
        std::swap(b[p], b[c]);
        for (int r = 0; r < n; ++r)
            if (r != c && G[r][c] != 0) {
                Q f = G[r][c] / G[c][c];
                for (int j = c; j < n; ++j) G[r][j] -= f * G[c][j];
                b[r] -= f * b[c];
            }
    }
    for (int i = 0; i < n; ++i) b[i] /= G[i][i];
    return b;
}

inline std::vector<std::vector<Q>> inverse_transpose_columns(const AnticanonicalPair& Y, const std::vector<int>& tr,
                                                             const std::vector<Vec>& targets) {
    const int n = static_cast<int>(tr.size());
    std::vector<std::vector<Q>> G(n, std::vector<Q>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G[i][j] = static_cast<long>(Y.pair(Y.curves[tr[i]].cls, Y.curves[tr[j]].cls));
    std::vector<std::vector<Q>> out;
    for (auto& t : targets) {
        std::vector<Q> b(n);
        for (int i = 0; i < n; ++i) b[i] = static_cast<long>(Y.pair(Y.curves[tr[i]].cls, t));
        out.push_back(solve(G, b));
    }
    return out;
}

}  // namespace detail

namespace detail {

// Exact feasibility of {A_i . C >= 1 on tracked curves and sides, A.D = A.D'
// for each listed pair of sides} over the given components. The unknowns are
// the values u_v = A_i . C_v on the tracked curves, which determine A_i
// because the curves form a basis.
inline std::optional<std::vector<Coefficients>> solve_degree_system(const std::vector<const AnticanonicalPair*>& comps,
                                                                    const std::vector<std::pair<SideRef, SideRef>>& equal) {
    const int nc = static_cast<int>(comps.size());
    std::vector<std::vector<int>> tr(nc);
    std::vector<int> offset(nc);
    int nvars = 0;
    std::map<std::pair<int, std::string>, std::vector<Q>> w;  // side -> degree as a function of u
    for (int c = 0; c < nc; ++c) {
        auto& Y = *comps[c];
        tr[c] = Y.tracked();
        offset[c] = nvars;
        nvars += static_cast<int>(tr[c].size());
        std::vector<Vec> sides;
        for (auto& d : Y.boundary) sides.push_back(d.cls);
        auto cols = inverse_transpose_columns(Y, tr[c], sides);
        for (std::size_t k = 0; k < sides.size(); ++k) w[{c, Y.boundary[k].name}] = cols[k];
    }
    // u = 1 + y with y >= 0
    auto degree_row = [&](const SideRef& r, std::vector<Q>& coeff, Q& constant) {
        auto& col = w.at({r.comp, r.side});
        for (std::size_t i = 0; i < col.size(); ++i) {
            coeff[offset[r.comp] + i] += col[i];
            constant += col[i];
        }
    };
    std::vector<LinearRow> rows;
    for (int c = 0; c < nc; ++c)
        for (auto& d : comps[c]->boundary) {
            LinearRow r;
            r.coeff.assign(nvars, 0);
            Q k = 0;
            degree_row({c, d.name}, r.coeff, k);
            r.rhs = 1 - k;
            rows.push_back(r);
        }
    for (auto& [a, b] : equal) {
        LinearRow r;
        r.coeff.assign(nvars, 0);
        r.equality = true;
        std::vector<Q> other(nvars, 0);
        Q ka = 0, kb = 0;
        degree_row(a, r.coeff, ka);
        degree_row(b, other, kb);
        for (int i = 0; i < nvars; ++i) r.coeff[i] -= other[i];
        r.rhs = kb - ka;
        rows.push_back(r);
    }
    auto y = find_feasible(rows, nvars);
    if (!y) return std::nullopt;
    std::vector<Coefficients> out(nc);
    for (int c = 0; c < nc; ++c) {
        auto& Y = *comps[c];
        const int n = static_cast<int>(tr[c].size());
        std::vector<std::vector<Q>> G(n, std::vector<Q>(n));
        std::vector<Q> u(n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) G[i][j] = static_cast<long>(Y.pair(Y.curves[tr[c][i]].cls, Y.curves[tr[c][j]].cls));
            u[i] = 1 + (*y)[offset[c] + i];
        }
        auto f = solve(G, u);
        for (int i = 0; i < n; ++i)
            if (f[i] != 0) out[c][Y.curves[tr[c][i]].name] = f[i];
    }
    return out;
}

inline void set_scale(AmpleCertificate& A) {
    mpz_class l = 1;
    for (auto& f : A.coeff)
        for (auto& [n, q] : f) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    A.scale = Q(l);
}

}  // namespace detail

inline std::optional<AmpleCertificate> lp_feasible(const CentralFibreState& s) {
    std::vector<std::pair<SideRef, SideRef>> equal;
    for (auto& g : s.gluings) equal.push_back({g.side_a, g.side_b});
    auto f = detail::solve_degree_system({&s.components[0], &s.components[1], &s.components[2]}, equal);
    if (!f) return std::nullopt;
    AmpleCertificate A;
    for (int c = 0; c < 3; ++c) A.coeff[c] = (*f)[c];
    detail::set_scale(A);
    auto err = check_certificate(s, A);
    if (!err.empty()) throw InternalError("lp_feasible produced an invalid certificate: " + err);
    return A;
}

// Ample divisor on a single component with no degree conditions.
inline std::optional<Coefficients> component_ample(const AnticanonicalPair& Y) {
    auto f = detail::solve_degree_system({&Y}, {});
    if (!f) return std::nullopt;
    return (*f)[0];
}

namespace detail {

// Degree offer of a degenerate component: the light side gets degree e and the
// heavy side e + m (regular) or 2e + m (non-regular), m independent of e.
struct Offer {
    Recipe recipe = Recipe::regular_leg;
    std::string light, heavy;
};

inline std::optional<Offer> offer_of(const AnticanonicalPair& Y) {
    for (Recipe r : {Recipe::regular_leg, Recipe::regular_pair, Recipe::singleton, Recipe::non_regular_leg})
        for (int k = 0; k < 2; ++k) {
            DegreeSpec d{r, Y.boundary[k].name, 64};
            if (construct_ample(Y, d)) return Offer{r, Y.boundary[k].name, Y.boundary[1 - k].name};
        }
    return std::nullopt;
}

inline std::optional<Int> as_int(const Q& q) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) return std::nullopt;
    return q.get_num().get_si();
}

struct Assembly {
    const CentralFibreState& s;
    AmpleCertificate A;
    bool ok = true;

    std::string side(int i, int j) const { return s.side_towards(i, j).side; }

    void put(int c, const DegreeSpec& d) {
        if (!ok) return;
        auto f = construct_ample(s.components[c], d);
        if (!f) {
            ok = false;
            return;
        }
        A.coeff[c] = *f;
    }
    Int degree(int c, int towards) {
        auto q = side_degree(s.components[c], A.coeff[c], side(c, towards));
        auto v = as_int(q);
        if (!v) ok = false;
        return v.value_or(0);
    }

    // degenerate component x with degree d towards component `from`
    void give(int x, int from, Int d) {
        if (!ok) return;
        auto& Y = s.components[x];
        auto o = offer_of(Y);
        if (!o) {
            ok = false;
            return;
        }
        if (o->light == side(x, from)) {
            put(x, {o->recipe, o->light, d});
            return;
        }
        // heavy side faces `from`: its degree is affine in e
        const Int probe = 64;
        auto f0 = construct_ample(Y, {o->recipe, o->light, probe});
        auto f1 = construct_ample(Y, {o->recipe, o->light, 2 * probe});
        if (!f0 || !f1) {
            ok = false;
            return;
        }
        Q h0 = side_degree(Y, *f0, o->heavy), h1 = side_degree(Y, *f1, o->heavy);
        if (h1 == h0) {
            ok = false;
            return;
        }
        auto e = as_int(probe + (Q(d) - h0) * probe / (h1 - h0));
        if (!e) {
            ok = false;
            return;
        }
        put(x, {o->recipe, o->light, *e});
    }

    // non-degenerate component c with degree d1 towards i and d2 towards j
    void absorb(int c, int i, Int d1, int j, Int d2) {
        if (d1 > d2) {
            std::swap(i, j);
            std::swap(d1, d2);
        }
        put(c, {Recipe::balanced, side(c, i), d1, 0, d2 - d1});
    }

    // non-degenerate component c with degree d1 towards i and d2 = gamma d1 + K on its other side
    void stretch(int c, int i, Int d1, Int d2, Int gamma) {
        Int K = d2 - gamma * d1;
        Int shift = K >= 0 ? 0 : (-K + gamma - 1) / gamma;
        Int e1 = d1 - shift;
        put(c, {Recipe::stretched, side(c, i), e1, shift, d2 - gamma * e1, gamma});
    }
};

inline std::optional<AmpleCertificate> assemble_P(const CentralFibreState& s, const PVerdict& v, Int E) {
    Assembly as{s, {}};
    const auto p = patterns(s);
    const auto [a, b, c] = v.roles;
    auto light_faces = [&](int x, int y) {
        auto o = offer_of(s.components[x]);
        return o && o->light == as.side(x, y);
    };
    // degree of component x towards its other neighbour once built from degree d towards `from`
    auto pass = [&](int x, int from, Int d) {
        const int y = 3 - x - from;
        if (p[x] == Pattern::N)
            as.absorb(x, from, d, y, d);
        else
            as.give(x, from, d);
        return as.ok ? as.degree(x, y) : Int(0);
    };
    if (p[a] == Pattern::N && p[b] != Pattern::X && p[c] != Pattern::X) {
        // degree E on the b-c gluing, carried to a from both sides
        Int dba = pass(b, c, E);
        Int dca = pass(c, b, E);
        if (as.ok) as.absorb(a, b, dba, c, dca);
    } else if (p[a] == Pattern::N && p[b] == Pattern::X && p[c] == Pattern::X) {
        if (light_faces(b, c) && light_faces(c, b)) {
            as.give(b, c, E);
            as.give(c, b, E);
            if (as.ok) as.absorb(a, b, as.degree(b, a), c, as.degree(c, a));
        } else {
            // the chain a -> b -> c -> a doubles twice
            Int dbc = pass(b, a, E);
            Int dca = pass(c, b, dbc);
            if (as.ok) as.stretch(a, b, E, dca, 4);
        }
    } else if (p[a] == Pattern::N && p[b] == Pattern::X && p[c] == Pattern::R) {
        if (light_faces(b, a)) {
            Int dbc = pass(b, a, E);
            Int dca = pass(c, b, dbc);
            if (as.ok) as.stretch(a, b, E, dca, 2);
        } else {
            Int dba = pass(b, c, E);
            Int dca = pass(c, b, E);
            if (as.ok) as.stretch(a, c, dca, dba, 2);
        }
    } else if (p[a] == Pattern::X) {
        // b faces the heavy side of a, c its light side
        if (!light_faces(a, c)) return std::nullopt;
        const Int sq_cx = s.side_square(s.side_towards(c, a));
        const Int sq_bc = s.side_square(s.side_towards(b, c));
        if (sq_cx <= 0) {
            as.give(a, c, E);
            Int h = as.ok ? as.degree(a, b) : 0;
            if (as.ok) as.absorb(b, a, h, c, h);
            if (as.ok) as.stretch(c, a, E, h, 2);
        } else if (sq_bc <= 0) {
            as.give(a, c, E);
            Int h = as.ok ? as.degree(a, b) : 0;
            if (as.ok) as.absorb(c, a, E, b, E);
            if (as.ok) as.stretch(b, c, E, h, 2);
        } else {
            const Int e = 4 * E;
            as.put(c, {Recipe::three_halves, as.side(c, a), e});
            Int dcb = as.ok ? as.degree(c, b) : 0;
            if (as.ok) as.put(b, {Recipe::three_halves, as.side(b, c), dcb});
            Int dba = as.ok ? as.degree(b, a) : 0;
            if (as.ok) as.give(a, c, e);
            if (!as.ok) return std::nullopt;
            // raise the heavy side with the square-zero end of the leg, which is nef
            auto& Y = s.components[a];
            auto sh = shape_of(Y);
            std::string end;
            for (auto& [v0, leg] : sh.cls.legs)
                if (Y.square(Y.curves[Y.curve_index(sh.name(leg.back()))].cls) == 0) end = sh.name(leg.back());
            if (end.empty()) return std::nullopt;
            const auto& D = s.side(s.side_towards(a, b)).cls;
            Q gap = Q(dba) - side_degree(Y, as.A.coeff[a], as.side(a, b));
            Q per = static_cast<long>(Y.pair(Y.curves[Y.curve_index(end)].cls, D));
            if (gap < 0 || per <= 0) return std::nullopt;
            add_scaled(as.A.coeff[a], {{end, gap / per}}, 1);
        }
    } else {
        return std::nullopt;
    }
    if (!as.ok) return std::nullopt;
    set_scale(as.A);
    if (!check_certificate(s, as.A).empty()) return std::nullopt;
    return as.A;
}

inline std::optional<AmpleCertificate> assemble_T(const CentralFibreState& s) {
    const int w = s.special;
    const GluingRecord* self = nullptr;
    for (auto& g : s.gluings)
        if (g.kind == GlueKind::self_glued) self = &g;
    auto fw = solve_degree_system({&s.components[w]}, {{{0, self->side_a.side}, {0, self->side_b.side}}});
    if (!fw) return std::nullopt;
    AmpleCertificate A;
    A.coeff[w] = (*fw)[0];
    for (auto& g : s.gluings) {
        if (g.kind == GlueKind::self_glued) continue;
        const SideRef& mine = g.side_a.comp == w ? g.side_a : g.side_b;
        const SideRef& other = g.side_a.comp == w ? g.side_b : g.side_a;
        auto f = component_ample(s.components[other.comp]);
        if (!f) return std::nullopt;
        Q target = certificate_degree(s, A, mine);
        Q have = side_degree(s.components[other.comp], *f, other.side);
        A.coeff[other.comp] = {};
        add_scaled(A.coeff[other.comp], *f, target / have);
    }
    set_scale(A);
    if (!check_certificate(s, A).empty()) return std::nullopt;
    return A;
}

}  // namespace detail

// Certificate assembled from the per-component constructions, threading the
// boundary degrees around the cycle. Empty if the criterion says the state is
// not projective.
inline std::optional<AmpleCertificate> glue_certificates(const CentralFibreState& s) {
    if (s.class_tag == ClassTag::T) {
        if (!criterion_T(s)) return std::nullopt;
        auto A = detail::assemble_T(s);
        if (!A) throw InternalError("glue_certificates: assembly failed on a projective state");
        return A;
    }
    auto v = criterion_P_detail(s);
    if (!v.projective) return std::nullopt;
    for (Int E = 16; E <= (Int(1) << 30); E *= 2)
        if (auto A = detail::assemble_P(s, v, E)) return A;
    throw InternalError("glue_certificates: assembly failed on a projective state (" + v.rule + ")");
}

// Coefficients strictly increase along every leg of every component.
inline bool certificate_legs_increasing(const CentralFibreState& s, const AmpleCertificate& A) {
    for (int c = 0; c < 3; ++c) {
        if (s.components[c].boundary.size() != 2) continue;
        if (!legs_increasing(s.components[c], A.coeff[c])) return false;
    }
    return true;
}

}  // namespace dnv
