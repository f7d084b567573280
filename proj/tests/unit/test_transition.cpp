#include <doctest.h>

#include <set>

#include "ruleinfer/derivation.hpp"
#include "ruleinfer/generators.hpp"
#include "ruleinfer/transition.hpp"
#include "test_support.hpp"

using namespace ruleinfer;
using namespace testing;

namespace {

Transition random_transition(std::mt19937& rng, const LabelPoset& P, const std::vector<std::string>& labels) {
    for (;;) {
        const Rule p = random_rule(rng, P, labels);
        const Graph g = random_graph(rng, P, 5, 0.4, labels);
        const auto ds = enumerate_derivations(p, g, P);
        if (ds.empty()) continue;
        const auto& d = ds[std::uniform_int_distribution<std::size_t>(0, ds.size() - 1)(rng)];
        return Transition{g, d.track, d.output};
    }
}

} // namespace

TEST_CASE("transition equivalence is invariant under renumbering") {
    std::mt19937 rng(3);
    const auto P = LabelPoset::flat({"a", "b"});
    for (int i = 0; i < 40; ++i) {
        const Transition t = random_transition(rng, P, {"a", "b"});
        std::vector<VertexId> pg, ph;
        const Graph g2 = shuffled(rng, t.source, &pg);
        const Graph h2 = shuffled(rng, t.target, &ph);
        // Rebuild the map through the permutations, matching edges by endpoints.
        GraphMap f2 = GraphMap::empty_for(g2);
        for (VertexId v = 0; v < t.source.vertex_count(); ++v)
            if (t.map.vertices[v] != unmapped) f2.vertices[pg[v]] = ph[t.map.vertices[v]];
        for (EdgeId e = 0; e < t.source.edge_count(); ++e) {
            if (t.map.edges[e] == unmapped) continue;
            const Edge& a = t.source.edge(e);
            const Edge& b = t.target.edge(t.map.edges[e]);
            const EdgeId e2 = *g2.find_edge(pg[a.source], pg[a.target], a.directed);
            f2.edges[e2] = *h2.find_edge(ph[b.source], ph[b.target], b.directed);
        }
        CHECK(transitions_equivalent(t, Transition{g2, f2, h2}));
    }
    // Same graphs, different map.
    Graph g = path(P, 2);
    Graph h;
    h.add_vertex(P.label("a"));
    h.add_vertex(P.label("a"));
    GraphMap keep = GraphMap::empty_for(g), swap = GraphMap::empty_for(g);
    keep.vertices = {0, 1};
    swap.vertices = {0, unmapped};
    CHECK_FALSE(transitions_equivalent(Transition{g, keep, h}, Transition{g, swap, h}));
}

TEST_CASE("maximum rule generates its transition, and the two generation tests agree") {
    std::mt19937 rng(5);
    const auto P = LabelPoset::flat({"a", "b"});
    const std::vector<std::string> labels{"a", "b"};
    std::size_t yes = 0, no = 0;
    for (int i = 0; i < 120; ++i) {
        const Transition t = random_transition(rng, P, labels);
        const Rule pt = maximum_rule(t, P);
        CHECK(generates(pt, t, P));
        CHECK(generates_exhaustive(pt, t, P));
        const Rule p = random_rule(rng, P, labels, 2);
        const bool a = generates(p, t, P), b = generates_exhaustive(p, t, P);
        CHECK(a == b);
        CHECK(a == is_subrule(p, pt, P).has_value());
        (a ? yes : no)++;
    }
    CHECK(no > 0);
}

TEST_CASE("system dedupes equivalent transitions") {
    const auto P = LabelPoset::flat({"a", "b"});
    TransitionSystem sys(P);
    const Graph g = path(P, 3);
    sys.add_input(g);
    Graph h = g;
    h.set_label(0, P.label("b"));
    Graph h2 = g;
    h2.set_label(2, P.label("b"));
    CHECK(sys.add_transition(0, GraphMap::identity(g), h) == 0);
    CHECK(sys.add_transition(0, GraphMap::identity(g), h2) == 0); // mirror image
    CHECK(sys.transitions().size() == 1);
    CHECK(sys.loaded_count() == 2);
}

TEST_CASE("grammar systems: max rules are exact in directed encodings only") {
    for (auto [enc, exact] : {std::pair{GrammarEncoding::directed, true}, std::pair{GrammarEncoding::undirected, false}}) {
        const auto sys = gen_grammar({enc, 4});
        std::vector<Rule> rules;
        for (std::size_t t = 0; t < sys.transitions().size(); ++t) rules.push_back(maximum_rule(sys.transition(t), sys.poset()));
        const auto rep = check(rules, sys);
        CHECK(rep.generating());
        CHECK(rep.exact() == exact);
        CHECK(detect_pathology(sys, 1).empty() == exact);
    }
}

TEST_CASE("grammar strings round trip") {
    const auto sys = gen_grammar({GrammarEncoding::marked, 4});
    REQUIRE(!sys.inputs().empty());
    CHECK(grammar_string(sys.inputs()[0], sys.poset()).empty()); // shortest first
    std::set<std::string> forms;
    for (const Graph& g : sys.inputs()) forms.insert(grammar_string(g, sys.poset()));
    CHECK(forms.count("S"));
    CHECK(forms.count("AT"));
    CHECK(forms.count("10T1"));
    CHECK(forms.size() == sys.inputs().size());
}

TEST_CASE("tic-tac-toe system sizes") {
    const auto o = gen_tictactoe({'O'});
    const auto x = gen_tictactoe({'X'});
    CHECK(o.inputs().size() == 311);
    CHECK(o.transitions().size() == 684);
    CHECK(x.inputs().size() == 222);
    CHECK(x.transitions().size() == 339);
    CHECK(tictactoe_value("_________") == 0);
    CHECK(tictactoe_value("OOO_XX_X_") == 1);
}

TEST_CASE("normalization drops untouched components") {
    const auto P = LabelPoset::flat({"a", "b"});
    Graph g = path(P, 2);
    const VertexId lone = g.add_vertex(P.label("b"));
    Graph h = g;
    h.set_label(0, P.label("b"));
    const Transition n = normalize(g, GraphMap::identity(g), h);
    CHECK(n.source.vertex_count() == 2);
    CHECK(n.target.vertex_count() == 2);
    (void)lone;
    // Not dropped once something attaches to it.
    Graph h2 = h;
    h2.add_edge(1, 2, P.label("a"));
    GraphMap f = GraphMap::identity(g);
    CHECK(normalize(g, f, h2).source.vertex_count() == 3);
}

TEST_CASE("input combinations") {
    const auto P = LabelPoset::flat({"a", "b"});
    const Graph a = path(P, 1, "a"), b = path(P, 1, "b");
    const auto all = combine_inputs({a, b}, 2);
    CHECK(all.size() == 5); // a, b, aa, ab, bb
    CHECK(combine_inputs({a, a}, 2).size() == 2);
}
