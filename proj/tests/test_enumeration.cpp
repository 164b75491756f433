#include <doctest.h>

#include <dnv/enumeration.hpp>

using namespace dnv;

namespace {

const BfsResult& projective_classes() {
    static const BfsResult r = bfs(ClassFilter::both, true);
    return r;
}

Triple compose(int shifts, bool flip, Triple t) {
    if (flip) t = involution(t);
    for (int i = 0; i < shifts; ++i) t = shift(t);
    return t;
}

}  // namespace

TEST_CASE("triple equivalence examples") {
    CHECK(triple_equivalent({0, 1, -1}, {-1, 0, 1}));
    CHECK(triple_equivalent({3, 0, -3}, {0, -3, 3}));
    CHECK_FALSE(triple_equivalent({1, 2, -1}, {1, 2, -2}));
    CHECK(triple_equivalent({1, 1, 1}, {-1, -1, -1}));
    CHECK(canonical_triple({0, 1, -1}) == canonical_triple({1, -1, 0}));
}

TEST_CASE("shift and involution generate a group of order 6") {
    for (Triple t : {Triple{1, 2, 3}, Triple{0, -4, 7}, Triple{5, 5, -2}}) {
        CHECK(shift(shift(shift(t))) == t);
        CHECK(involution(involution(t)) == t);
        CHECK(involution(shift(involution(t))) == shift(shift(t)));
        std::set<Triple> images;
        for (int k = 0; k < 3; ++k)
            for (bool f : {false, true}) images.insert(compose(k, f, t));
        CHECK(images.size() == 6);
        CHECK(triple_orbit(t).size() == 6);
        for (auto& u : triple_orbit(t)) CHECK(canonical_triple(u) == canonical_triple(t));
    }
}

TEST_CASE("triples of reference and flopped states") {
    auto s = build_YP();
    REQUIRE(triple_of(s).has_value());
    CHECK(*triple_of(s) == Triple{0, 0, 0});
    CHECK(degenerate_count(s) == 0);
    CHECK_THROWS_AS(triple_of(build_YT()), UsageError);
    for (auto& m : available_type_I(s)) {
        auto t = apply_type_I(s, m);
        auto x = triple_of(t);
        REQUIRE(x.has_value());
        Int moved = 0;
        for (Int v : *x) moved += v < 0 ? -v : v;
        CHECK(moved == 1);
    }
}

TEST_CASE("listed triple strata are disjoint") {
    auto st = enumerate_regular_triples();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (auto& t : st[i].classes) CHECK_FALSE(st[j].classes.count(t));
    CHECK(st[0].listed.size() == 27);
    CHECK(st[1].listed.size() == 103);
    CHECK(st[2].listed.size() == 225);
}

TEST_CASE("all-regular classes correspond to listed triples") {
    auto st = enumerate_regular_triples();
    std::array<std::set<Triple>, 3> found;
    for (auto& c : projective_classes().classes) {
        if (c.state.class_tag != ClassTag::P) continue;
        auto t = triple_of(c.state);
        if (!t) continue;
        const int k = degenerate_count(c.state);
        REQUIRE(k < 3);
        CHECK(found[k].insert(canonical_triple(*t)).second);
    }
    for (int k = 0; k < 3; ++k) CHECK(found[k] == st[k].classes);
}

TEST_CASE("projective enumeration is closed under projective flops") {
    auto& r = projective_classes();
    CHECK(r.find(iso_key(build_YP())) != nullptr);
    CHECK(r.find(iso_key(build_YT())) != nullptr);
    for (auto& c : r.classes) {
        CHECK(c.projective);
        for (auto& t : neighbours(c.state, true))
            if (is_projective(t)) CHECK(r.find(iso_key(t)) != nullptr);
    }
}

TEST_CASE("class filters partition the projective classes") {
    auto p = bfs(ClassFilter::P, true), t = bfs(ClassFilter::T, true);
    for (auto& c : p.classes) CHECK(c.state.class_tag == ClassTag::P);
    for (auto& c : t.classes) CHECK(c.state.class_tag == ClassTag::T);
    CHECK(p.classes.size() + t.classes.size() == projective_classes().classes.size());
}

TEST_CASE("class T coordinates") {
    auto t = build_YT();
    auto x = t_coordinates(t);
    CHECK(x[0] == TCoordinate{-1, false});
    CHECK(x[1] == TCoordinate{-1, false});
    CHECK(x[0].str() == "-1");
    CHECK(TCoordinate{-8, true}.str() == "-8'");
    CHECK_THROWS_AS(t_coordinates(build_YP()), UsageError);
    std::set<std::array<TCoordinate, 2>> seen;
    for (auto& c : projective_classes().classes) {
        if (c.state.class_tag != ClassTag::T) continue;
        auto y = t_coordinates(c.state);
        CHECK(y[1] <= y[0]);
        seen.insert(y);
    }
    CHECK(seen.count({TCoordinate{-1, false}, TCoordinate{-1, false}}));
}

TEST_CASE("symmetric states") {
    CHECK(is_symmetric(build_YP()));
    CHECK(is_symmetric(build_YT()));
    auto s = build_YP();
    auto t = apply_type_I(s, available_type_I(s)[0]);
    CHECK_FALSE(is_symmetric(t));
    for (auto& c : projective_classes().classes) {
        const int ol = orbit_length(c.state);
        CHECK((ol == 1 || ol == 2 || ol == 3 || ol == 6));
        if (ol == 6) CHECK_FALSE(is_symmetric(c.state));
        if (is_symmetric(c.state)) CHECK(ol <= 3);
    }
}
