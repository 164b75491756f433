#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "morifan.hpp"

namespace dnv {

struct SuiteResult {
    std::string name;
    long checked = 0;
    std::vector<std::string> failures;
    explicit SuiteResult(std::string n) : name(std::move(n)) {}
    bool ok() const { return failures.empty(); }
    void fail(std::string what) {
        if (failures.size() < 20) failures.push_back(std::move(what));
        else if (failures.size() == 20) failures.push_back("...");
    }
};

// Criterion verdict against the exact feasibility oracle on every state of the
// bounded unfiltered class P search. Uncovered patterns count as failures.
inline SuiteResult oracle_agreement(int margin = 8) {
    SuiteResult r{"oracle agreement"};
    for (auto& c : bfs(ClassFilter::P, false, margin).classes) {
        ++r.checked;
        try {
            if (criterion_P(c.state) != c.projective)
                r.fail("criterion and feasibility disagree (" + criterion_P_detail(c.state).rule + ")");
        } catch (const UncoveredCase& e) {
            r.fail(std::string("uncovered case: ") + e.what() + (c.projective ? " (feasible)" : " (infeasible)"));
        }
    }
    return r;
}

// Explicit base certificates, then assembled and feasibility certificates for
// every projective class.
inline SuiteResult certificate_checks(const BfsResult& classes) {
    SuiteResult r{"certificates"};
    for (auto Y : {build_Y2(), build_Y4(), build_Y1()}) {
        ++r.checked;
        auto A = explicit_ample_certificate(Y);
        for (int i : Y.tracked())
            if (rational_pair(Y, A, Y.curves[i].cls) <= 0) r.fail(std::string("base certificate not positive on ") + to_string(Y.base_tag));
        std::vector<mpq_class> deg;
        for (auto& d : Y.boundary) deg.push_back(rational_pair(Y, A, d.cls));
        for (auto& d : deg)
            if (d <= 0 || d != deg[0]) r.fail(std::string("base certificate boundary degrees on ") + to_string(Y.base_tag));
    }
    for (auto& c : classes.classes) {
        ++r.checked;
        try {
            auto G = glue_certificates(c.state);
            if (!G) {
                r.fail("no assembled certificate for a projective class");
                continue;
            }
            auto err = check_certificate(c.state, *G);
            if (!err.empty()) r.fail("assembled certificate: " + err);
            if (!certificate_legs_increasing(c.state, *G)) r.fail("assembled certificate not increasing along a leg");
            auto L = lp_feasible(c.state);
            if (!L) r.fail("feasibility oracle rejects a projective class");
        } catch (const std::exception& e) {
            r.fail(e.what());
        }
    }
    return r;
}

// Structural invariants of the labelled flop graph.
inline SuiteResult graph_checks(const FlopGraph& g) {
    SuiteResult r{"flop graph"};
    ++r.checked;
    if (!g.reverse_consistent) r.fail("a flop has no reverse flop");
    if (!connected(g)) r.fail("graph is not connected");
    std::map<std::string, int> per;
    for (auto& n : g.nodes) ++per[n.iso];
    for (auto& n : g.nodes) {
        ++r.checked;
        if (per[n.iso] != orbit_length(n.state)) r.fail("labelled node count differs from the orbit length");
    }
    for (auto& e : g.edges)
        if (e.type == FlopType::II && g.nodes[e.a].tag == g.nodes[e.b].tag) r.fail("type II edge between nodes of one class");
    return r;
}

// Random flop sequences from both reference states: state invariants, class
// tags and involutivity of every applied flop.
inline SuiteResult random_walks(unsigned seed, int walks, int length) {
    SuiteResult r{"random flop sequences"};
    std::mt19937 rng(seed);
    for (int w = 0; w < walks; ++w) {
        CentralFibreState s = w % 2 == 0 ? build_YP() : build_YT();
        for (int step = 0; step < length; ++step) {
            auto moves = available_type_I(s);
            auto glue = available_type_II(s);
            const std::size_t total = moves.size() + glue.size();
            if (total == 0) break;
            const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
            const bool type_II = pick >= moves.size();
            CentralFibreState t = type_II ? apply_type_II(s, glue[pick - moves.size()]) : apply_type_I(s, moves[pick]);
            ++r.checked;
            auto err = check_state(t);
            if (!err.empty()) r.fail("invariant after flop: " + err);
            if ((t.class_tag != s.class_tag) != type_II) r.fail("class tag not preserved by type I or not flipped by type II");
            const auto back = labelled_key(s);
            bool found = false;
            if (type_II) {
                for (int g : available_type_II(t)) found = found || labelled_key(apply_type_II(t, g)) == back;
            } else {
                for (auto& m : available_type_I(t)) found = found || labelled_key(apply_type_I(t, m)) == back;
            }
            if (!found) r.fail("flop is not undone by any flop of the result");
            s = std::move(t);
        }
    }
    return r;
}

}  // namespace dnv
