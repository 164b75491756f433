#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <dnv/curve_structure.hpp>

using namespace dnv;

namespace {

// Hand-built type d2 structure from vertex squares, edges and side incidences.
AugmentedCurveStructure make_structure(const std::vector<Int>& squares, const std::vector<std::pair<int, int>>& edges,
                                       const std::vector<std::array<Int, 2>>& inc, std::array<Int, 2> sides = {-1, -1}) {
    AugmentedCurveStructure a;
    const int n = static_cast<int>(squares.size());
    for (int v = 0; v < n; ++v) a.core.vertices.push_back({"v" + std::to_string(v), squares[v]});
    a.core.edges = edges;
    a.boundary_vertices = {{"D1", sides[0]}, {"D2", sides[1]}};
    a.adj.assign(n, std::vector<Int>(n, 0));
    for (auto [i, j] : edges) a.adj[i][j] = a.adj[j][i] = 1;
    a.inc.assign(n, std::vector<Int>(2, 0));
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < 2; ++k) {
            a.inc[v][k] = inc[v][k];
            if (inc[v][k] != 0) a.incidences.push_back({v, k, inc[v][k]});
        }
    return a;
}

AugmentedCurveStructure permuted(const AugmentedCurveStructure& a, const std::vector<int>& p) {
    std::vector<Int> sq(a.size());
    std::vector<std::array<Int, 2>> inc(a.size());
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < a.size(); ++v) {
        sq[p[v]] = a.square(v);
        inc[p[v]] = {a.inc[v][0], a.inc[v][1]};
    }
    for (auto [i, j] : a.core.edges) edges.push_back({p[i], p[j]});
    return make_structure(sq, edges, inc, {a.boundary_vertices[0].second, a.boundary_vertices[1].second});
}

std::vector<int> branch_sizes(const AugmentedCurveStructure& a) {
    int fork = -1;
    for (int v = 0; v < a.size(); ++v)
        if (a.neighbours(v).size() == 3) fork = v;
    REQUIRE(fork >= 0);
    std::vector<int> sizes;
    for (int start : a.neighbours(fork)) {
        int prev = fork, cur = start, len = 1;
        while (true) {
            int next = -1;
            for (int w : a.neighbours(cur))
                if (w != prev) next = w;
            if (next < 0) break;
            prev = cur, cur = next, ++len;
        }
        sizes.push_back(len);
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

}  // namespace

TEST_CASE("degree-2 structure has one fork with branches 1, 3, 3") {
    auto a = extract(build_Y2());
    CHECK(a.size() == 8);
    CHECK(a.core.type_tag == TypeTag::d2);
    CHECK(branch_sizes(a) == std::vector<int>{1, 3, 3});
    auto c = classify(a);
    CHECK(c.exceptional_vertices.size() == 2);
    CHECK_FALSE(c.degenerate);
    CHECK(c.regular);
    for (auto& [v, leg] : c.legs) {
        CHECK(leg.front() == v);
        CHECK(a.neighbours(leg.back()).size() == 3);
        CHECK(leg.size() == 4);
    }
}

TEST_CASE("degree-1 structure is the E8 graph with the exceptional leg end") {
    auto a = extract(build_Y1());
    CHECK(a.size() == 9);
    CHECK(a.core.type_tag == TypeTag::d1);
    CHECK(a.core.edges.size() == 8);
    CHECK(branch_sizes(a) == std::vector<int>{1, 2, 5});
    int minus_one = 0;
    for (int v = 0; v < a.size(); ++v) minus_one += a.square(v) == -1;
    CHECK(minus_one == 1);
    CHECK(extract(build_Y4()).core.type_tag == TypeTag::d4);
}

TEST_CASE("flopping out an exceptional curve shortens its leg") {
    auto Y = build_Y2();
    const auto e1 = Y.boundary[0].anchor[0].curve;
    auto before = extract(Y);
    std::string neighbour;
    for (int v = 0; v < before.size(); ++v)
        if (before.core.vertices[v].first == e1) neighbour = before.core.vertices[before.neighbours(v)[0]].first;
    blow_down_at_anchor(Y, 0, e1);
    auto a = extract(Y);
    CHECK(a.size() == 7);
    for (int v = 0; v < a.size(); ++v)
        if (a.core.vertices[v].first == neighbour) {
            CHECK(a.square(v) == -1);
            CHECK(a.inc[v][0] == 1);
        }
    CHECK(Y.square(Y.boundary[0].cls) == 0);
}

TEST_CASE("singleton structure is degenerate and non-regular") {
    auto a = make_structure({0}, {}, {{{1, 2}}}, {0, 2});
    auto c = classify(a);
    CHECK(c.exceptional_vertices.empty());
    CHECK(c.degenerate);
    CHECK_FALSE(c.regular);
}

TEST_CASE("leg ending in a square-zero vertex is degenerate and non-regular") {
    // exceptional vertex on D1, leg ending at a square-zero vertex meeting D2 twice
    auto a = make_structure({-1, -2, 0}, {{0, 1}, {1, 2}}, {{{1, 0}}, {{0, 0}}, {{0, 2}}});
    auto c = classify(a);
    REQUIRE(c.exceptional_vertices.size() == 1);
    CHECK(c.legs.at(0) == std::vector<int>{0, 1, 2});
    CHECK_FALSE(c.regular);
    CHECK(c.degenerate);
}

TEST_CASE("leg ending at a vertex meeting a side once is degenerate but regular") {
    auto a = make_structure({-1, -2, -2}, {{0, 1}, {1, 2}}, {{{1, 0}}, {{0, 0}}, {{0, 1}}});
    auto c = classify(a);
    CHECK(c.degenerate);
    CHECK(c.regular);
}

TEST_CASE("classification is independent of vertex order") {
    auto a = extract(build_Y2());
    std::vector<int> p(a.size());
    std::iota(p.begin(), p.end(), 0);
    std::mt19937 rng(5);
    for (int k = 0; k < 20; ++k) {
        std::shuffle(p.begin(), p.end(), rng);
        auto b = permuted(a, p);
        auto c = classify(b);
        CHECK(c.exceptional_vertices.size() == 2);
        CHECK(c.regular);
        CHECK_FALSE(c.degenerate);
    }
}

TEST_CASE("canonical form is invariant under relabelling core vertices") {
    auto a = extract(build_Y2());
    std::vector<int> p(a.size());
    std::iota(p.begin(), p.end(), 0);
    std::mt19937 rng(9);
    const auto f = canonical_form(a, BoundaryOrder::fixed);
    const auto g = canonical_form(a, BoundaryOrder::free);
    for (int k = 0; k < 20; ++k) {
        std::shuffle(p.begin(), p.end(), rng);
        auto b = permuted(a, p);
        CHECK(canonical_form(b, BoundaryOrder::fixed) == f);
        CHECK(canonical_form(b, BoundaryOrder::free) == g);
    }
}

TEST_CASE("swapping the sides of the degree-2 pair") {
    auto a = extract(build_Y2());
    auto b = a;
    std::swap(b.boundary_vertices[0], b.boundary_vertices[1]);
    for (auto& row : b.inc) std::swap(row[0], row[1]);
    CHECK(canonical_form(a, BoundaryOrder::free) == canonical_form(b, BoundaryOrder::free));
    CHECK(canonical_form(a, BoundaryOrder::fixed) == canonical_form(b, BoundaryOrder::fixed));

    // after shortening one leg only the free form forgets which side it was
    auto Y = build_Y2();
    blow_down_at_anchor(Y, 0, "E1");
    auto c = extract(Y);
    auto d = c;
    std::swap(d.boundary_vertices[0], d.boundary_vertices[1]);
    for (auto& row : d.inc) std::swap(row[0], row[1]);
    CHECK(canonical_form(c, BoundaryOrder::free) == canonical_form(d, BoundaryOrder::free));
    CHECK(canonical_form(c, BoundaryOrder::fixed) != canonical_form(d, BoundaryOrder::fixed));
}

TEST_CASE("different contraction orders give the same structure") {
    auto Y = build_Y2(), Z = build_Y2();
    blow_down_at_anchor(Y, 0, Y.boundary[0].anchor[0].curve);
    blow_down_at_anchor(Y, 1, Y.boundary[1].anchor[0].curve);
    blow_down_at_anchor(Z, 1, Z.boundary[1].anchor[0].curve);
    blow_down_at_anchor(Z, 0, Z.boundary[0].anchor[0].curve);
    CHECK(canonical_form(extract(Y), BoundaryOrder::fixed) == canonical_form(extract(Z), BoundaryOrder::fixed));
}

TEST_CASE("equal canonical forms have equal label multisets") {
    auto Y = build_Y2(), Z = build_Y2();
    blow_down_at_anchor(Y, 0, "E1");
    blow_down_at_anchor(Z, 1, "E2");
    auto a = extract(Y), b = extract(Z);
    REQUIRE(canonical_form(a, BoundaryOrder::free) == canonical_form(b, BoundaryOrder::free));
    auto labels = [](const AugmentedCurveStructure& x) {
        std::vector<Int> l;
        for (int v = 0; v < x.size(); ++v) l.push_back(x.square(v));
        std::sort(l.begin(), l.end());
        return l;
    };
    CHECK(labels(a) == labels(b));
    CHECK(a.core.edges.size() == b.core.edges.size());
    CHECK(canonical_form(a, BoundaryOrder::free) != canonical_form(extract(build_Y2()), BoundaryOrder::free));
}
