#include <doctest.h>

#include <dnv/morifan.hpp>

using namespace dnv;

namespace {

const FlopGraph& graph() {
    static const FlopGraph g = build_flop_graph();
    return g;
}

}  // namespace

TEST_CASE("flop graph structure") {
    auto& g = graph();
    CHECK(g.reverse_consistent);
    CHECK(connected(g));
    CHECK(g.find(labelled_state_key(StateShape(build_YP()))) >= 0);
    CHECK(g.find(labelled_state_key(StateShape(build_YT()))) >= 0);
    for (auto& e : g.edges) {
        CHECK(e.a < e.b);
        if (e.type == FlopType::II) CHECK(g.nodes[e.a].tag != g.nodes[e.b].tag);
        else CHECK(g.nodes[e.a].tag == g.nodes[e.b].tag);
    }
    for (auto& n : g.nodes) CHECK(is_projective(n.state));
}

TEST_CASE("labelled node count equals the sum of orbit lengths") {
    auto& g = graph();
    auto c = cone_census();
    CHECK(c.total == static_cast<long>(g.nodes.size()));
    long p = 0;
    for (auto& n : g.nodes) p += n.tag == ClassTag::P;
    CHECK(c.P == p);
    CHECK(c.T == static_cast<long>(g.nodes.size()) - p);
    std::map<std::string, int> per;
    for (auto& n : g.nodes) ++per[n.iso];
    CHECK(static_cast<long>(per.size()) == c.orbits);
    for (auto& n : g.nodes) CHECK(per[n.iso] == orbit_length(n.state));
    long sum = 0;
    for (auto& [len, k] : c.by_orbit_length) sum += len * k;
    CHECK(sum == c.total);
}

TEST_CASE("reference nodes and their neighbours") {
    auto& g = graph();
    const int yp = g.find(labelled_state_key(StateShape(build_YP())));
    int type_I = 0, type_II = 0;
    for (auto& e : g.edges)
        if (e.a == yp || e.b == yp) (e.type == FlopType::I ? type_I : type_II) += 1;
    CHECK(type_I == 6);
    CHECK(type_II == 3);
}

TEST_CASE("secondary fan components") {
    auto& g = graph();
    auto comps = secondary_fan(g);
    REQUIRE(!comps.empty());
    std::size_t total = 0;
    for (auto& c : comps) total += c.nodes.size();
    CHECK(total == g.nodes.size());
    CHECK(comps[0].contains_YP);
    CHECK(comps[0].T == 0);
    for (std::size_t i = 1; i < comps.size(); ++i) {
        CHECK(comps[i].P == 0);
        CHECK(comps[i].nodes.size() == comps[1].nodes.size());
        CHECK(comps[i].classes_by_multiplicity == comps[1].classes_by_multiplicity);
    }
    long p = 0;
    for (auto& n : g.nodes) p += n.tag == ClassTag::P;
    CHECK(comps[0].P == p);
}

TEST_CASE("every type II edge joins the main component to a class T component") {
    auto& g = graph();
    auto comps = secondary_fan(g);
    std::vector<int> where(g.nodes.size());
    for (std::size_t c = 0; c < comps.size(); ++c)
        for (int v : comps[c].nodes) where[v] = static_cast<int>(c);
    std::set<int> reached;
    for (auto& e : g.edges) {
        if (e.type != FlopType::II) continue;
        CHECK(where[e.a] != where[e.b]);
        reached.insert(where[e.a] == 0 ? where[e.b] : where[e.a]);
    }
    CHECK(reached.size() == comps.size() - 1);
}
