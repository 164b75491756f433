#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnv/document.hpp"
#include "dnv/verify.hpp"

using json = nlohmann::ordered_json;
using namespace dnv;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

std::string str(const Q& q) { return q.get_str(); }

json certificate_json(const CentralFibreState& s, const AmpleCertificate& A) {
    json comps = json::array();
    for (int c = 0; c < 3; ++c) {
        json f = json::object();
        for (auto& [n, q] : A.coeff[c]) f[n] = str(q);
        json deg = json::object();
        for (auto& d : s.components[c].boundary) deg[d.name] = str(certificate_degree(s, A, {c, d.name}));
        comps.push_back({{"coefficients", f}, {"boundary_degrees", deg}});
    }
    return {{"scale", str(A.scale)}, {"components", comps}};
}

struct Row {
    int id = 0;
    const EnumeratedClass* c = nullptr;
    std::string pattern, invariant;
    bool symmetric = false;
    int orbit = 0;
};

int cmd_build(const std::string& ref) {
    if (ref == "YP") std::cout << emit_document(build_YP());
    else if (ref == "YT") std::cout << emit_document(build_YT());
    else {
        std::cerr << "build: unknown reference '" << ref << "' (expected YP or YT)\n";
        return exit_usage;
    }
    return exit_ok;
}

int cmd_enumerate(const std::string& cls, bool projective_only, int margin, const std::string& format) {
    const ClassFilter filter = cls == "P" ? ClassFilter::P : cls == "T" ? ClassFilter::T : ClassFilter::both;
    auto r = bfs(filter, projective_only, margin);
    std::vector<Row> rows;
    std::map<std::string, long> strata;
    long symmetric = 0, orbit_sum = 0, P = 0, T = 0, projective = 0;
    for (std::size_t i = 0; i < r.classes.size(); ++i) {
        auto& c = r.classes[i];
        StateShape sh(c.state);
        Row row;
        row.id = static_cast<int>(i);
        row.c = &c;
        row.symmetric = is_symmetric(sh);
        row.orbit = orbit_length(sh);
        if (c.state.class_tag == ClassTag::P) {
            ++P;
            row.pattern = pattern_string(c.state);
            if (auto t = triple_of(c.state)) {
                auto k = canonical_triple(*t);
                row.invariant = "(" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ")";
            }
        } else {
            ++T;
            row.pattern = "T";
            auto t = t_coordinates(c.state);
            row.invariant = "(" + t[0].str() + "," + t[1].str() + ")";
        }
        if (c.projective) {
            ++projective;
            ++strata[row.pattern];
            symmetric += row.symmetric;
            orbit_sum += row.orbit;
        }
        rows.push_back(row);
    }
    if (format == "csv") {
        std::cout << "id,class,pattern,invariant,symmetric,orbit_length,projective\n";
        for (auto& row : rows)
            std::cout << row.id << ',' << to_string(row.c->state.class_tag) << ',' << row.pattern << ",\"" << row.invariant << "\","
                      << row.symmetric << ',' << row.orbit << ',' << row.c->projective << '\n';
        std::cout << "total," << rows.size() << ",P=" << P << ",T=" << T << ",projective=" << projective << ",symmetric=" << symmetric
                  << ",cones=" << orbit_sum << '\n';
        return exit_ok;
    }
    json out;
    out["class"] = cls;
    out["projective_only"] = projective_only;
    json items = json::array();
    for (auto& row : rows)
        items.push_back({{"id", row.id},
                         {"class", to_string(row.c->state.class_tag)},
                         {"pattern", row.pattern},
                         {"invariant", row.invariant},
                         {"symmetric", row.symmetric},
                         {"orbit_length", row.orbit},
                         {"projective", row.c->projective}});
    out["rows"] = items;
    json st = json::object();
    for (auto& [k, v] : strata) st[k] = v;
    out["totals"] = {{"classes", rows.size()}, {"P", P},       {"T", T}, {"projective", projective},
                     {"strata", st},           {"symmetric", symmetric}, {"cones", orbit_sum}};
    std::cout << out.dump(2) << '\n';
    return exit_ok;
}

int cmd_count_cones(const std::string& format) {
    auto census = cone_census();
    auto g = build_flop_graph();
    long gp = 0, gt = 0;
    for (auto& n : g.nodes) (n.tag == ClassTag::P ? gp : gt) += 1;
    const bool agree = static_cast<long>(g.nodes.size()) == census.total && gp == census.P && gt == census.T;
    if (format == "json") {
        json out{{"total", census.total},
                 {"P", census.P},
                 {"T", census.T},
                 {"orbits", census.orbits},
                 {"graph_nodes", g.nodes.size()},
                 {"agree", agree}};
        std::cout << out.dump(2) << '\n';
    } else {
        std::cout << census.total << " (P: " << census.P << ", T: " << census.T << ")\n";
    }
    if (!agree) {
        std::cerr << json{{"error", "orbit sum and labelled graph disagree"}, {"graph_nodes", g.nodes.size()}}.dump() << '\n';
        return exit_failed;
    }
    return exit_ok;
}

int cmd_secondary_fan(const std::string& format) {
    auto g = build_flop_graph();
    auto comps = secondary_fan(g);
    if (format == "json") {
        json items = json::array();
        for (auto& c : comps) {
            json mult = json::object();
            for (auto& [m, k] : c.classes_by_multiplicity) mult[std::to_string(m)] = k;
            items.push_back({{"size", c.nodes.size()}, {"P", c.P}, {"T", c.T}, {"contains_YP", c.contains_YP}, {"classes_by_nodes", mult}});
        }
        std::cout << json{{"components", items.size()}, {"details", items}}.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << comps.size() << " components, sizes [";
    for (std::size_t i = 0; i < comps.size(); ++i) std::cout << (i ? ", " : "") << comps[i].nodes.size();
    std::cout << "]\n";
    for (auto& c : comps) {
        std::cout << "  " << c.nodes.size() << " nodes: P " << c.P << ", T " << c.T << (c.contains_YP ? ", contains YP" : "") << ";";
        for (auto& [m, k] : c.classes_by_multiplicity) std::cout << ' ' << k << " classes x " << m;
        std::cout << '\n';
    }
    return exit_ok;
}

int cmd_flop_graph(const std::string& format) {
    auto g = build_flop_graph();
    std::map<std::string, int> iso_id;
    for (auto& n : g.nodes) iso_id.emplace(n.iso, static_cast<int>(iso_id.size()));
    if (format == "json") {
        json nodes = json::array(), edges = json::array();
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            nodes.push_back({{"id", i}, {"class", to_string(g.nodes[i].tag)}, {"iso_class", iso_id[g.nodes[i].iso]}});
        for (auto& e : g.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"type", to_string(e.type)}, {"move", e.move}});
        std::cout << json{{"nodes", nodes}, {"edges", edges}}.dump(2) << '\n';
        return exit_ok;
    }
    std::cout << "graph flops {\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        std::cout << "  n" << i << " [class=" << to_string(g.nodes[i].tag) << ", iso_class=" << iso_id[g.nodes[i].iso] << "];\n";
    for (auto& e : g.edges) std::cout << "  n" << e.a << " -- n" << e.b << " [type=" << to_string(e.type) << "];\n";
    std::cout << "}\n";
    return exit_ok;
}

int cmd_check(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) {
            std::cerr << json{{"error", "cannot read file"}, {"path", path}}.dump() << '\n';
            return exit_usage;
        }
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    CentralFibreState s;
    try {
        s = parse_document(text);
    } catch (const ParseError& e) {
        std::cerr << json{{"error", "parse"}, {"detail", e.what()}}.dump() << '\n';
        return exit_usage;
    }
    json out;
    out["class"] = to_string(s.class_tag);
    bool verdict = false, covered = true;
    std::string rule;
    try {
        if (s.class_tag == ClassTag::T) {
            verdict = criterion_T(s);
            rule = "self-glued squares";
        } else {
            auto v = criterion_P_detail(s);
            verdict = v.projective;
            rule = v.rule;
        }
    } catch (const UncoveredCase& e) {
        covered = false;
        rule = e.what();
    }
    auto lp = lp_feasible(s);
    out["criterion"] = covered ? json{{"projective", verdict}, {"rule", rule}} : json{{"uncovered", rule}};
    out["feasibility"] = {{"projective", lp.has_value()}};
    const bool agree = covered && verdict == lp.has_value();
    out["agree"] = agree;
    if (lp) out["feasibility"]["certificate"] = certificate_json(s, *lp);
    if (covered && verdict) {
        try {
            auto G = glue_certificates(s);
            if (G) out["assembled_certificate"] = certificate_json(s, *G);
        } catch (const std::exception& e) {
            out["assembled_certificate"] = {{"error", e.what()}};
        }
    }
    std::cout << out.dump(2) << '\n';
    return agree ? exit_ok : exit_failed;
}

int cmd_verify(unsigned seed, int walks, int length, int margin) {
    std::vector<SuiteResult> suites;
    suites.push_back(oracle_agreement(margin));
    auto classes = bfs(ClassFilter::both, true);
    suites.push_back(certificate_checks(classes));
    {
        SuiteResult r{"state invariants"};
        for (auto& c : classes.classes) {
            ++r.checked;
            auto err = check_state(c.state);
            if (!err.empty()) r.fail(err);
        }
        suites.push_back(r);
    }
    {
        SuiteResult r{"triples"};
        auto strata = enumerate_regular_triples();
        std::array<std::set<Triple>, 3> found;
        for (auto& c : classes.classes) {
            if (c.state.class_tag != ClassTag::P) continue;
            if (auto t = triple_of(c.state)) {
                ++r.checked;
                if (!found[degenerate_count(c.state)].insert(canonical_triple(*t)).second) r.fail("two classes share a triple");
            }
        }
        for (int i = 0; i < 3; ++i)
            if (found[i] != strata[i].classes) r.fail("stratum " + std::to_string(i) + " differs from the triple lists");
        suites.push_back(r);
    }
    suites.push_back(graph_checks(build_flop_graph()));
    suites.push_back(random_walks(seed, walks, length));
    json out = json::array();
    bool ok = true;
    for (auto& s : suites) {
        ok = ok && s.ok();
        out.push_back({{"suite", s.name}, {"checked", s.checked}, {"ok", s.ok()}, {"failures", s.failures}});
    }
    std::cout << json{{"ok", ok}, {"suites", out}}.dump(2) << '\n';
    return ok ? exit_ok : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Models of the degree-2 Dolgachev-Nikulin-Voisin family: enumeration, projectivity and the Mori fan"};
    app.require_subcommand(1);

    std::string ref;
    auto* build = app.add_subcommand("build", "Emit a reference state document");
    build->add_option("ref", ref, "YP or YT")->required();

    std::string cls = "both", format_table = "json";
    bool projective_only = false;
    int margin = 8;
    auto* enumerate = app.add_subcommand("enumerate", "Enumerate isomorphism classes");
    enumerate->add_option("--class", cls, "P, T or both")->check(CLI::IsMember({"P", "T", "both"}));
    enumerate->add_flag("--projective-only", projective_only, "Restrict to projective states");
    enumerate->add_option("--margin", margin, "Flops explored beyond the projective region when unfiltered")->check(CLI::NonNegativeNumber);
    enumerate->add_option("--format", format_table, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::string format_cones = "text";
    auto* cones = app.add_subcommand("count-cones", "Count maximal cones of the Mori fan");
    cones->add_option("--format", format_cones, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::string format_fan = "text";
    auto* fan = app.add_subcommand("secondary-fan", "Components of the flop graph without type II flops");
    fan->add_option("--format", format_fan, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::string format_graph = "dot";
    auto* graph = app.add_subcommand("flop-graph", "Emit the labelled flop graph");
    graph->add_option("--format", format_graph, "dot or json")->check(CLI::IsMember({"dot", "json"}));

    std::string path;
    auto* check = app.add_subcommand("check", "Decide projectivity of a state document");
    check->add_option("document", path, "Path to a state document, or - for standard input")->required();

    unsigned seed = 1;
    int walks = 1000, length = 12, vmargin = 8;
    auto* verify = app.add_subcommand("verify", "Run the oracle agreement and invariant suites");
    verify->add_option("--seed", seed, "Seed for random flop sequences");
    verify->add_option("--walks", walks, "Number of random flop sequences")->check(CLI::NonNegativeNumber);
    verify->add_option("--length", length, "Flops per sequence")->check(CLI::NonNegativeNumber);
    verify->add_option("--margin", vmargin, "Margin of the unfiltered search")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*build) return cmd_build(ref);
        if (*enumerate) return cmd_enumerate(cls, projective_only, margin, format_table);
        if (*cones) return cmd_count_cones(format_cones);
        if (*fan) return cmd_secondary_fan(format_fan);
        if (*graph) return cmd_flop_graph(format_graph);
        if (*check) return cmd_check(path);
        if (*verify) return cmd_verify(seed, walks, length, vmargin);
    } catch (const UsageError& e) {
        std::cerr << json{{"error", "usage"}, {"detail", e.what()}}.dump() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"detail", e.what()}}.dump() << '\n';
        return exit_failed;
    }
    return exit_usage;
}
