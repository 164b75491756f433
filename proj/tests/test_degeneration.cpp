#include <doctest.h>

#include <dnv/keys.hpp>

using namespace dnv;

namespace {

int tracked_total(const CentralFibreState& s) {
    int n = 0;
    for (auto& Y : s.components) n += static_cast<int>(Y.tracked().size());
    return n;
}

int rank_total(const CentralFibreState& s) {
    int n = 0;
    for (auto& Y : s.components) n += Y.lattice.rank;
    return n;
}

void check_sums(const CentralFibreState& s) {
    for (auto& g : s.gluings) CHECK(s.side_square(g.side_a) + s.side_square(g.side_b) == g.conserved_sum);
}

int self_glued(const CentralFibreState& s) {
    for (std::size_t g = 0; g < s.gluings.size(); ++g)
        if (s.gluings[g].kind == GlueKind::self_glued) return static_cast<int>(g);
    return -1;
}

}  // namespace

TEST_CASE("reference state of class P") {
    auto s = build_YP();
    CHECK(s.class_tag == ClassTag::P);
    CHECK(check_state(s).empty());
    CHECK(tracked_total(s) == 24);
    CHECK(rank_total(s) - static_cast<int>(s.gluings.size()) == 21);
    REQUIRE(s.gluings.size() == 3);
    for (auto& g : s.gluings) {
        CHECK(g.kind == GlueKind::smooth);
        CHECK(g.conserved_sum == -2);
        CHECK(s.side_square(g.side_a) == -1);
        CHECK(s.side_square(g.side_b) == -1);
    }
    for (auto& Y : s.components) CHECK(Y.base_tag == BaseTag::Y2);
    check_sums(s);
}

TEST_CASE("reference state of class T") {
    auto s = build_YT();
    CHECK(s.class_tag == ClassTag::T);
    CHECK(check_state(s).empty());
    CHECK(tracked_total(s) == 24);
    CHECK(rank_total(s) - static_cast<int>(s.gluings.size()) == 21);
    REQUIRE(s.special >= 0);
    CHECK(s.components[s.special].base_tag == BaseTag::Y4);
    int nodal = 0;
    for (auto& g : s.gluings) {
        if (g.kind == GlueKind::self_glued) {
            CHECK(g.conserved_sum == -2);
            CHECK(g.side_a.comp == s.special);
            CHECK(g.side_b.comp == s.special);
            CHECK(s.side_square(g.side_a) == -1);
            CHECK(s.side_square(g.side_b) == -1);
        }
        if (g.kind == GlueKind::nodal) {
            ++nodal;
            CHECK(g.conserved_sum == 0);
            const SideRef& mine = g.side_a.comp == s.special ? g.side_a : g.side_b;
            const SideRef& other = g.side_a.comp == s.special ? g.side_b : g.side_a;
            CHECK(s.side_square(mine) == -1);
            CHECK(s.side_square(other) == 1);
            CHECK(s.components[other.comp].base_tag == BaseTag::Y1);
        }
    }
    CHECK(nodal == 2);
}

TEST_CASE("available type I moves at the reference states") {
    CHECK(available_type_I(build_YP()).size() == 6);
    auto t = build_YT();
    auto moves = available_type_I(t);
    CHECK(moves.size() == 4);
    int on_special = 0;
    for (auto& m : moves) {
        auto& g = t.gluings[t.gluing_of({m.comp, m.side})];
        CHECK(g.kind != GlueKind::self_glued);
        on_special += m.comp == t.special;
    }
    CHECK(on_special == 2);
}

TEST_CASE("type I flop moves a curve across a gluing and lengthens the partner leg") {
    auto s = build_YP();
    const FlopMove m{0, s.components[0].boundary[0].name, s.components[0].boundary[0].anchor[0].curve};
    const SideRef donor{0, m.side};
    const SideRef recv = s.partner(donor);
    const auto old_exc = s.side(recv).anchor[0].curve;
    auto t = apply_type_I(s, m);
    CHECK(check_state(t).empty());
    CHECK(t.class_tag == ClassTag::P);
    CHECK(t.side_square(donor) == 0);
    CHECK(t.side_square(recv) == -2);
    check_sums(t);
    CHECK(tracked_total(t) == 24);
    auto& R = t.components[recv.comp];
    auto& anchor = t.side(recv).anchor;
    REQUIRE(anchor.size() == 1);
    auto& plus = R.curves[R.curve_index(anchor[0].curve)];
    CHECK(R.square(plus.cls) == -1);
    CHECK(plus.role == Role::exceptional);
    auto& old = R.curves[R.curve_index(old_exc)];
    CHECK(R.square(old.cls) == -2);
    CHECK(R.pair(plus.cls, old.cls) == 1);
    CHECK(R.lattice.rank == 9);
    CHECK(t.components[0].lattice.rank == 7);
}

TEST_CASE("type I flops are undone by the reverse flop") {
    auto s = build_YP();
    for (auto& m : available_type_I(s)) {
        auto t = apply_type_I(s, m);
        const SideRef recv = t.partner({m.comp, m.side});
        const FlopMove back{recv.comp, recv.side, t.side(recv).anchor[0].curve};
        auto u = apply_type_I(t, back);
        CHECK(labelled_key(u) == labelled_key(s));
        CHECK(u.side_square({m.comp, m.side}) == -1);
    }
}

TEST_CASE("unavailable moves are rejected") {
    auto s = build_YP();
    CHECK_THROWS_AS(apply_type_I(s, {0, "D1", "B1"}), UsageError);
    auto t = apply_type_I(s, available_type_I(s)[0]);
    const auto m = available_type_I(s)[0];
    int g = t.gluing_of({m.comp, m.side});
    for (int h : available_type_II(t)) CHECK(h != g);
    CHECK_THROWS_AS(apply_type_II(t, g), UsageError);
}

TEST_CASE("available type II moves at the reference states") {
    CHECK(available_type_II(build_YP()).size() == 3);
    auto t = build_YT();
    auto g = available_type_II(t);
    REQUIRE(g.size() == 1);
    CHECK(t.gluings[g[0]].kind == GlueKind::self_glued);
}

TEST_CASE("type II flop from class P") {
    auto s = build_YP();
    for (int g : available_type_II(s)) {
        auto t = apply_type_II(s, g);
        CHECK(check_state(t).empty());
        CHECK(t.class_tag == ClassTag::T);
        CHECK(tracked_total(t) == 24);
        CHECK(rank_total(t) - 3 == 21);
        REQUIRE(t.special >= 0);
        auto& S = t.components[t.special];
        CHECK(S.lattice.rank == 10);
        std::vector<Int> sq;
        for (auto& d : S.boundary) sq.push_back(S.square(d.cls));
        CHECK(sq == std::vector<Int>{-3, -1, -3, -1});
        for (int c = 0; c < 3; ++c) {
            if (c == t.special) continue;
            CHECK(t.components[c].lattice.rank == 7);
            REQUIRE(t.components[c].boundary.size() == 1);
            CHECK(t.components[c].square(t.components[c].boundary[0].cls) == 3);
        }
        std::vector<Int> sums;
        for (auto& r : t.gluings) sums.push_back(r.conserved_sum);
        std::sort(sums.begin(), sums.end());
        CHECK(sums == std::vector<Int>{-2, 0, 0});
        check_sums(t);

        auto u = apply_type_II(t, self_glued(t));
        CHECK(u.class_tag == ClassTag::P);
        CHECK(labelled_key(u) == labelled_key(s));
    }
}

TEST_CASE("type II flop from class T and back") {
    auto t = build_YT();
    auto s = apply_type_II(t, self_glued(t));
    CHECK(s.class_tag == ClassTag::P);
    CHECK(check_state(s).empty());
    CHECK(tracked_total(s) == 24);
    bool back = false;
    for (int g : available_type_II(s)) back = back || labelled_key(apply_type_II(s, g)) == labelled_key(t);
    CHECK(back);
}

TEST_CASE("type I flops along nodal sides keep the self-glued pair") {
    auto t = build_YT();
    for (auto& m : available_type_I(t)) {
        auto u = apply_type_I(t, m);
        CHECK(check_state(u).empty());
        auto& g = u.gluings[self_glued(u)];
        CHECK(u.side_square(g.side_a) == -1);
        CHECK(u.side_square(g.side_b) == -1);
        check_sums(u);
    }
}
