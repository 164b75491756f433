#include <doctest.h>

#include <random>

#include <dnv/lattice.hpp>

using namespace dnv;

namespace {

IntersectionLattice plane() { return make_lattice({{1}}, {"l"}); }

Vec random_vec(std::mt19937& rng, int n) {
    std::uniform_int_distribution<Int> d(-5, 5);
    Vec v(static_cast<std::size_t>(n));
    for (auto& x : v) x = d(rng);
    return v;
}

// Blow up the plane at `n` general points.
IntersectionLattice del_pezzo(int n) {
    auto L = plane();
    for (int i = 0; i < n; ++i) L = blow_up(L, {}, "E" + std::to_string(i + 1)).lattice;
    return L;
}

}  // namespace

TEST_CASE("pairing on the plane and on exceptional classes") {
    auto L = plane();
    CHECK(pairing(L, {1}, {1}) == 1);
    auto B = blow_up(L, {});
    CHECK(pairing(B.lattice, B.E, B.E) == -1);
    CHECK(pairing(B.lattice, {1, 0}, {1, 0}) == 1);
    CHECK(pairing(B.lattice, {1, 0}, B.E) == 0);
    CHECK_THROWS_AS(pairing(L, {1, 0}, {1}), UsageError);
}

TEST_CASE("pairing is symmetric") {
    std::mt19937 rng(7);
    auto L = del_pezzo(5);
    for (int k = 0; k < 100; ++k) {
        auto a = random_vec(rng, L.rank), b = random_vec(rng, L.rank);
        CHECK(pairing(L, a, b) == pairing(L, b, a));
    }
}

TEST_CASE("blow up at a point on a line") {
    auto B = blow_up(plane(), {{{1}, 1}});
    REQUIRE(B.transformed.size() == 1);
    CHECK(B.lattice.rank == 2);
    CHECK(pairing(B.lattice, B.transformed[0], B.transformed[0]) == 0);
    CHECK(pairing(B.lattice, B.transformed[0], B.E) == 1);
    CHECK_THROWS_AS(blow_up(plane(), {{{1}, -1}}), UsageError);
}

TEST_CASE("iterated blow-up tower over a boundary class") {
    // three infinitely near points on a conic: chain E1 - E2, E2 - E3, E3
    auto L = plane();
    Vec D{2};
    std::vector<Vec> E;
    for (int i = 0; i < 3; ++i) {
        std::vector<std::pair<Vec, Int>> through{{D, 1}};
        if (!E.empty()) through.push_back({E.back(), 1});
        auto B = blow_up(L, through, "E" + std::to_string(i + 1));
        for (auto& e : E) e = embed(e);
        L = B.lattice;
        D = B.transformed[0];
        E.push_back(B.E);
    }
    Vec c1 = E[0] - E[1], c2 = E[1] - E[2];
    CHECK(pairing(L, c1, c1) == -2);
    CHECK(pairing(L, c2, c2) == -2);
    CHECK(pairing(L, E[2], E[2]) == -1);
    CHECK(pairing(L, c1, c2) == 1);
    CHECK(pairing(L, c2, E[2]) == 1);
    CHECK(pairing(L, D, D) == 1);
}

TEST_CASE("blow down kills the exceptional class") {
    auto B = blow_up(plane(), {{{1}, 1}});
    auto D = blow_down(B.lattice, B.E);
    CHECK(D.lattice.rank == 1);
    for (Int x : D.push(B.E)) CHECK(x == 0);
    CHECK_THROWS_AS(blow_down(B.lattice, {1, 0}), ContractionError);
}

TEST_CASE("blow down raises a (-1) side meeting E once to square zero") {
    auto L = del_pezzo(2);
    Vec E{0, 1, 0}, D{1, -1, -1};  // the line through both points
    REQUIRE(pairing(L, D, D) == -1);
    REQUIRE(pairing(L, D, E) == 1);
    auto B = blow_down(L, E);
    auto p = B.push(D);
    CHECK(pairing(B.lattice, p, p) == 0);
}

TEST_CASE("pushforward pairing identity on random classes") {
    std::mt19937 rng(11);
    for (int n = 1; n <= 8; ++n) {
        auto L = del_pezzo(n);
        std::vector<Vec> exceptional{unit(L.rank, L.rank - 1)};
        if (n >= 2) {
            Vec line(static_cast<std::size_t>(L.rank), 0);
            line[0] = 1, line[1] = -1, line[2] = -1;
            exceptional.push_back(line);
        }
        for (auto& E : exceptional) {
            REQUIRE(pairing(L, E, E) == -1);
            auto B = blow_down(L, E);
            for (int k = 0; k < 50; ++k) {
                auto a = random_vec(rng, L.rank), b = random_vec(rng, L.rank);
                CHECK(pairing(B.lattice, B.push(a), B.push(b)) == pairing(L, a, b) + pairing(L, a, E) * pairing(L, b, E));
            }
        }
    }
}

TEST_CASE("blow up then blow down restores coefficients and pairings") {
    std::mt19937 rng(3);
    auto L = del_pezzo(4);
    auto B = blow_up(L, {{Vec{1, -1, 0, 0, 0}, 1}});
    auto D = blow_down(B.lattice, B.E);
    REQUIRE(D.lattice.rank == L.rank);
    for (int k = 0; k < 50; ++k) {
        auto a = random_vec(rng, L.rank), b = random_vec(rng, L.rank);
        CHECK(D.push(embed(a)) == a);
        CHECK(pairing(D.lattice, D.push(embed(a)), D.push(embed(b))) == pairing(L, a, b));
    }
}

TEST_CASE("unimodularity and signature are preserved") {
    auto L = plane();
    for (int n = 0; n < 9; ++n) {
        auto I = inertia(L);
        CHECK(I.pos == 1);
        CHECK(I.neg == L.rank - 1);
        CHECK(I.zero == 0);
        CHECK(abs(determinant(L)) == 1);
        L = blow_up(L, {{Vec(static_cast<std::size_t>(L.rank), 0), 0}}).lattice;
    }
    auto D = blow_down(L, unit(L.rank, 3));
    CHECK(abs(determinant(D.lattice)) == 1);
    CHECK(inertia(D.lattice).pos == 1);
}
