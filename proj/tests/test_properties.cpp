#include <doctest.h>

#include <dnv/verify.hpp>

using namespace dnv;

namespace {

void report(const SuiteResult& r) {
    for (auto& f : r.failures) MESSAGE(r.name << ": " << f);
}

}  // namespace

TEST_CASE("random flop sequences preserve the state invariants") {
    auto r = random_walks(2024, 1000, 12);
    report(r);
    CHECK(r.ok());
    CHECK(r.checked >= 1000);
}

TEST_CASE("random flop sequences keep tracked curves, rank and a nonsingular basis") {
    std::mt19937 rng(99);
    int walks = 0;
    for (int w = 0; w < 1000; ++w, ++walks) {
        CentralFibreState s = w % 2 ? build_YT() : build_YP();
        for (int step = 0; step < 8; ++step) {
            auto moves = available_type_I(s);
            auto glue = available_type_II(s);
            if (moves.empty() && glue.empty()) break;
            std::size_t k = std::uniform_int_distribution<std::size_t>(0, moves.size() + glue.size() - 1)(rng);
            s = k < moves.size() ? apply_type_I(s, moves[k]) : apply_type_II(s, glue[k - moves.size()]);
        }
        int tracked = 0, rank = 0;
        for (auto& Y : s.components) {
            std::vector<Vec> basis;
            for (int i : Y.tracked()) basis.push_back(Y.curves[i].cls);
            tracked += static_cast<int>(basis.size());
            rank += Y.lattice.rank;
            REQUIRE(static_cast<int>(basis.size()) == Y.lattice.rank);
            CHECK(gram_determinant(Y.lattice, basis) != 0);
        }
        CHECK(tracked == 24);
        CHECK(rank - static_cast<int>(s.gluings.size()) == 21);
        for (auto& g : s.gluings) CHECK(s.side_square(g.side_a) + s.side_square(g.side_b) == g.conserved_sum);
    }
    CHECK(walks == 1000);
}

TEST_CASE("pushforward identity along random flop sequences") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<Int> coeff(-4, 4);
    CentralFibreState s = build_YP();
    for (int step = 0; step < 200; ++step) {
        auto moves = available_type_I(s);
        if (moves.empty()) s = build_YP(), moves = available_type_I(s);
        auto& m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
        auto& Y = s.components[m.comp];
        const Vec E = Y.curves[Y.curve_index(m.curve)].cls;
        auto D = blow_down(Y.lattice, E);
        for (int k = 0; k < 10; ++k) {
            Vec a(E.size()), b(E.size());
            for (auto& x : a) x = coeff(rng);
            for (auto& x : b) x = coeff(rng);
            CHECK(pairing(D.lattice, D.push(a), D.push(b)) == Y.pair(a, b) + Y.pair(a, E) * Y.pair(b, E));
        }
        s = apply_type_I(s, m);
    }
}

TEST_CASE("flop graph invariants") {
    auto r = graph_checks(build_flop_graph());
    report(r);
    CHECK(r.ok());
}
