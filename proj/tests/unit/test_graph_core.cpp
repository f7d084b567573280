#include <doctest.h>

#include "ruleinfer/canonical.hpp"
#include "test_support.hpp"

using namespace ruleinfer;
using namespace testing;

TEST_CASE("flat poset order and meets") {
    const auto P = LabelPoset::flat({"C", "O", "X"});
    const Label eps = P.bottom(), C = P.label("C"), O = P.label("O"), X = P.label("X");
    CHECK(P.leq(eps, C));
    CHECK(P.leq(C, C));
    CHECK_FALSE(P.leq(C, O));
    CHECK(P.meet(X, X) == X);
    CHECK(P.meet(X, O) == eps);
    CHECK(P.meet(P.top(), X) == X);
    CHECK_THROWS_AS((void)P.label("N"), LabelError);
}

TEST_CASE("meet laws on a non-flat poset") {
    // a < b < d, a < c < d
    const auto P = LabelPoset::with_covers({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
    const auto n = static_cast<std::uint32_t>(P.size());
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            const Label a{i}, b{j};
            CHECK(P.meet(a, b) == P.meet(b, a));
            CHECK(P.leq(P.meet(a, b), a));
            CHECK(P.meet(a, a) == a);
            for (std::uint32_t k = 0; k < n; ++k) {
                const Label c{k};
                CHECK(P.meet(P.meet(a, b), c) == P.meet(a, P.meet(b, c)));
            }
        }
    }
    CHECK(P.meet(P.label("b"), P.label("c")) == P.label("a"));
}

TEST_CASE("posets without meets or with cycles are rejected") {
    // b and c have two maximal lower bounds a1, a2.
    CHECK_THROWS_AS(LabelPoset::with_covers({"a1", "a2", "b", "c"},
                                            {{"a1", "b"}, {"a1", "c"}, {"a2", "b"}, {"a2", "c"}}),
                    LabelError);
    CHECK_THROWS_AS(LabelPoset::with_covers({"a", "b"}, {{"a", "b"}, {"b", "a"}}), LabelError);
}

TEST_CASE("graph construction rejects non-simple input") {
    const auto P = LabelPoset::flat({"a"});
    Graph g;
    g.add_vertex(P.label("a"));
    g.add_vertex(P.label("a"));
    g.add_edge(0, 1, P.label("a"));
    CHECK_THROWS_AS(g.add_edge(1, 0, P.label("a")), GraphError);
    CHECK_THROWS_AS(g.add_edge(0, 0, P.label("a")), GraphError);
    CHECK_THROWS_AS(g.add_edge(0, 5, P.label("a")), GraphError);
    g.add_edge(0, 1, P.label("a"), true);
    g.add_edge(1, 0, P.label("a"), true);
    CHECK(g.edge_count() == 3);
}

TEST_CASE("monomorphism counts") {
    const auto P = LabelPoset::flat({"a", "X"});
    SUBCASE("single vertex into k matching vertices") {
        Graph p;
        p.add_vertex(P.label("X"));
        Graph h;
        for (int i = 0; i < 5; ++i) h.add_vertex(P.label(i % 2 ? "a" : "X"));
        CHECK(enumerate_monomorphisms(p, h, P).size() == 3);
    }
    SUBCASE("triangle into K4") {
        CHECK(brute_force_monos(cycle(P, 3), complete(P, 4), P) == 24);
        CHECK(enumerate_monomorphisms(cycle(P, 3), complete(P, 4), P).size() == 24);
    }
    SUBCASE("directed 2-path into directed 3-cycle") {
        const auto m = enumerate_monomorphisms(path(P, 3, "a", true), cycle(P, 3, "a", true), P);
        CHECK(m.size() == brute_force_monos(path(P, 3, "a", true), cycle(P, 3, "a", true), P));
        CHECK(m.size() == 3);
    }
    SUBCASE("bottom-labeled pattern matches any label") {
        Graph p;
        p.add_vertex(P.bottom());
        Graph h = path(P, 4, "X");
        CHECK(enumerate_monomorphisms(p, h, P).size() == 4);
    }
}

TEST_CASE("monomorphisms agree with brute force on random graphs") {
    const auto P = LabelPoset::flat({"a", "b"});
    std::mt19937 rng(11);
    for (int round = 0; round < 60; ++round) {
        const Graph p = random_graph(rng, P, 2 + round % 4, 0.5, {"a", "b", "\xce\xb5"}, true);
        const Graph h = random_graph(rng, P, 4 + round % 5, 0.6, {"a", "b"}, true);
        const auto monos = enumerate_monomorphisms(p, h, P);
        CHECK(monos.size() == brute_force_monos(p, h, P));
        for (const auto& m : monos) CHECK(is_monomorphism(m, p, h, P));
    }
}

TEST_CASE("composition of monomorphisms is found by the enumerator") {
    const auto P = LabelPoset::flat({"a"});
    const Graph p = path(P, 3), mid = cycle(P, 4), host = complete(P, 5);
    const auto all = enumerate_monomorphisms(p, host, P);
    for (const auto& f : enumerate_monomorphisms(p, mid, P)) {
        for (const auto& g : enumerate_monomorphisms(mid, host, P)) {
            const GraphMap h = compose(f, g);
            CHECK(std::find(all.begin(), all.end(), h) != all.end());
        }
    }
}

TEST_CASE("anchored enumeration") {
    const auto P = LabelPoset::flat({"a"});
    const Graph p = path(P, 2), h = complete(P, 4);
    GraphMap anchor = GraphMap::empty_for(p);
    anchor.vertices[0] = 2;
    const auto monos = enumerate_monomorphisms(p, h, P, &anchor);
    CHECK(monos.size() == 3);
    for (const auto& m : monos) CHECK(m.vertices[0] == 2);
    GraphMap bad = GraphMap::empty_for(p);
    bad.vertices[0] = 9;
    CHECK_THROWS_AS((void)enumerate_monomorphisms(p, h, P, &bad), GraphError);
}

TEST_CASE("isomorphism and automorphisms") {
    const auto P = LabelPoset::flat({"a", "b"});
    std::mt19937 rng(5);
    const Graph g = random_graph(rng, P, 7, 0.4, {"a", "b"}, true);
    CHECK(is_isomorphic(g, g, P));
    CHECK(is_isomorphic(g, shuffled(rng, g), P));
    Graph star;
    for (int i = 0; i < 4; ++i) star.add_vertex(P.label("a"));
    for (int i = 1; i < 4; ++i) star.add_edge(0, i, P.label("a"));
    CHECK_FALSE(is_isomorphic(path(P, 4), star, P));
    Graph asym = path(P, 3);
    asym.set_label(0, P.label("b"));
    CHECK(automorphisms(asym, P).size() == 1);
    CHECK(automorphisms(path(P, 2), P).size() == 2);
    CHECK(automorphisms(cycle(P, 4), P).size() == brute_force_monos(cycle(P, 4), cycle(P, 4), P, true));
    CHECK(automorphisms(cycle(P, 4), P).size() == 8);
}

TEST_CASE("canonical codes") {
    const auto P = LabelPoset::flat({"a", "b", "c"});
    std::mt19937 rng(7);
    CHECK(canonical_code(Graph()) == canonical_code(Graph()));
    for (int i = 0; i < 30; ++i) {
        const Graph g = random_graph(rng, P, 3 + i % 8, 0.4, {"a", "b", "c"}, true);
        CHECK(canonical_code(g) == canonical_code(shuffled(rng, g)));
    }
    const Graph g = random_graph(rng, P, 5, 0.5, {"a", "b"});
    const Graph h = random_graph(rng, P, 4, 0.5, {"a", "c"});
    CHECK(canonical_code(disjoint_union(g, h).graph) == canonical_code(disjoint_union(h, g).graph));
    CHECK(canonical_code(disjoint_union(g, Graph()).graph) == canonical_code(g));
}

TEST_CASE("canonical codes on symmetric graphs") {
    const auto P = LabelPoset::flat({"a"});
    std::mt19937 rng(3);
    // Many identical components and vertex-transitive pieces stress the pruning.
    Graph g;
    for (int i = 0; i < 12; ++i) g = disjoint_union(g, cycle(P, 3)).graph;
    CHECK(canonical_code(g) == canonical_code(shuffled(rng, g)));
    Graph empty;
    for (int i = 0; i < 30; ++i) empty.add_vertex(P.label("a"));
    CHECK(canonical_code(empty) == canonical_code(shuffled(rng, empty)));
    CHECK(canonical_code(complete(P, 7)) == canonical_code(shuffled(rng, complete(P, 7))));
    // C6 and two triangles are refinement-equivalent but not isomorphic.
    CHECK(canonical_code(cycle(P, 6)) != canonical_code(disjoint_union(cycle(P, 3), cycle(P, 3)).graph));
}

TEST_CASE("disjoint union bookkeeping") {
    const auto P = LabelPoset::flat({"a"});
    const auto u = disjoint_union(path(P, 3), cycle(P, 4));
    CHECK(u.graph.vertex_count() == 7);
    CHECK(u.graph.edge_count() == 6);
    std::size_t comps = 0;
    (void)u.graph.components(&comps);
    CHECK(comps == 2);
    CHECK(u.vertex_origin[3].side == 1);
    CHECK(u.vertex_origin[3].index == 0);
}
