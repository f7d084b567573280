#include <doctest.h>

#include "ruleinfer/derivation.hpp"
#include "ruleinfer/transition.hpp"
#include "test_support.hpp"

using namespace ruleinfer;
using namespace testing;

namespace {

// a - b  =>  a   b
Rule edge_deletion(const LabelPoset& P) {
    Graph l = path(P, 2);
    Graph r;
    r.add_vertex(P.label("a"));
    r.add_vertex(P.label("a"));
    GraphMap f = GraphMap::empty_for(l);
    f.vertices = {0, 1};
    return rule_from_map(l, r, f, P);
}

// a  =>  (nothing)
Rule vertex_deletion(const LabelPoset& P) {
    Graph l = path(P, 1);
    return rule_from_map(l, Graph{}, GraphMap::empty_for(l), P);
}

} // namespace

TEST_CASE("edge deletion on a triangle") {
    const auto P = LabelPoset::flat({"a", "b"});
    const Rule p = edge_deletion(P);
    const auto ds = enumerate_derivations(p, cycle(P, 3), P);
    CHECK(ds.size() == 6); // 3 edges, 2 orientations each
    for (const auto& d : ds) {
        CHECK(d.output.vertex_count() == 3);
        CHECK(d.output.edge_count() == 2);
        CHECK(d.track.is_injective());
    }
}

TEST_CASE("dangling condition") {
    const auto P = LabelPoset::flat({"a", "b"});
    const Rule p = vertex_deletion(P);
    Graph g = path(P, 2);
    g.add_vertex(P.label("a"));
    // Only the isolated vertex can be deleted.
    const auto ds = enumerate_derivations(p, g, P);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].match.vertices[0] == 2);
    GraphMap m = GraphMap::empty_for(p.left);
    m.vertices[0] = 0;
    CHECK_THROWS_AS((void)apply(p, g, m, P), DerivationError);
}

TEST_CASE("creating an existing edge is refused") {
    const auto P = LabelPoset::flat({"a"});
    Graph l;
    l.add_vertex(P.label("a"));
    l.add_vertex(P.label("a"));
    Graph r = path(P, 2);
    GraphMap f = GraphMap::empty_for(l);
    f.vertices = {0, 1};
    const Rule p = rule_from_map(l, r, f, P);
    CHECK(enumerate_derivations(p, path(P, 2), P).empty());
    Graph two;
    two.add_vertex(P.label("a"));
    two.add_vertex(P.label("a"));
    CHECK(enumerate_derivations(p, two, P).size() == 2);
}

TEST_CASE("relabeling and bottom-labelled context") {
    const auto P = LabelPoset::flat({"a", "b", "c"});
    // a - ε  =>  b - ε : the ε vertex matches anything and keeps its label.
    Graph l, r;
    l.add_vertex(P.label("a"));
    l.add_vertex(P.bottom());
    l.add_edge(0, 1, P.label("a"));
    r.add_vertex(P.label("b"));
    r.add_vertex(P.bottom());
    r.add_edge(0, 1, P.label("a"));
    const Rule p = rule_from_map(l, r, GraphMap::identity(l), P);
    Graph g;
    g.add_vertex(P.label("a"));
    g.add_vertex(P.label("c"));
    g.add_vertex(P.label("b"));
    g.add_edge(0, 1, P.label("a"));
    g.add_edge(0, 2, P.label("a"));
    const auto ds = enumerate_derivations(p, g, P);
    REQUIRE(ds.size() == 2);
    for (const auto& d : ds) {
        CHECK(d.output.label(0) == P.label("b"));
        CHECK(d.output.label(1) == P.label("c"));
        CHECK(d.output.label(2) == P.label("b"));
    }
}

TEST_CASE("vertex and edge bookkeeping of random applications") {
    std::mt19937 rng(7);
    const auto P = LabelPoset::flat({"a", "b"});
    const std::vector<std::string> labels{"a", "b"};
    std::size_t checked = 0, dangling = 0, clashes = 0;
    while (checked < 300) {
        const Rule p = random_rule(rng, P, labels);
        const SpanInfo span = SpanInfo::of(p);
        const Graph g = random_graph(rng, P, 6, 0.4, labels);
        for (const GraphMap& m : enumerate_monomorphisms(p.left, g, P)) {
            // Independent prediction of the outcome.
            std::vector<char> gone(g.edge_count(), 0);
            for (EdgeId e = 0; e < p.left.edge_count(); ++e)
                if (span.map.edges[e] == unmapped) gone[m.edges[e]] = 1;
            bool dangles = false;
            for (VertexId v = 0; v < p.left.vertex_count(); ++v) {
                if (span.map.vertices[v] != unmapped) continue;
                for (EdgeId e : g.incident(m.vertices[v])) dangles |= !gone[e];
            }
            bool clash = false;
            if (!dangles) {
                for (EdgeId e = 0; e < p.right.edge_count(); ++e) {
                    if (span.inverse.edges[e] != unmapped) continue;
                    const Edge& ed = p.right.edge(e);
                    const VertexId a = span.inverse.vertices[ed.source], b = span.inverse.vertices[ed.target];
                    if (a == unmapped || b == unmapped) continue;
                    if (auto h = g.find_edge(m.vertices[a], m.vertices[b], ed.directed); h && !gone[*h]) clash = true;
                }
            }
            Derivation d;
            const ApplyStatus st = try_apply(span, g, m, d);
            if (dangles) {
                CHECK(st == ApplyStatus::dangling);
                ++dangling;
                continue;
            }
            if (clash) {
                CHECK(st == ApplyStatus::not_simple);
                ++clashes;
                continue;
            }
            REQUIRE(st == ApplyStatus::ok);
            CHECK(d.output.vertex_count() == g.vertex_count() - span.deleted_vertices + span.created_vertices);
            CHECK(d.output.edge_count() == g.edge_count() - span.deleted_edges + span.created_edges);
            CHECK(is_monomorphism(d.comatch, p.right, d.output, P));
            ++checked;
        }
    }
    CHECK(dangling > 0);
}

TEST_CASE("tic-tac-toe minimal rule on the empty board") {
    const auto P = LabelPoset::flat({"_", "O", "X", "-"});
    Graph l, r;
    l.add_vertex(P.label("_"));
    r.add_vertex(P.label("X"));
    const Rule p = rule_from_map(l, r, GraphMap::identity(l), P);
    Graph board;
    for (int i = 0; i < 9; ++i) board.add_vertex(P.label("_"));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (j < 2) board.add_edge(3 * i + j, 3 * i + j + 1, P.label("-"));
            if (i < 2) board.add_edge(3 * i + j, 3 * i + j + 3, P.label("-"));
        }
    std::size_t empty = 0;
    for (VertexId v = 0; v < 9; ++v) empty += board.label(v) == P.label("_");
    CHECK(enumerate_derivations(p, board, P).size() == empty);
}

TEST_CASE("a rule is a subrule of the rule its derivations induce") {
    std::mt19937 rng(11);
    const auto P = LabelPoset::flat({"a", "b"});
    const std::vector<std::string> labels{"a", "b"};
    std::size_t seen = 0;
    while (seen < 60) {
        const Rule p = random_rule(rng, P, labels);
        const Graph g = random_graph(rng, P, 5, 0.5, labels);
        for (const auto& d : enumerate_derivations(p, g, P)) {
            const Rule q = induced_rule(g, d, P);
            CHECK(is_subrule(p, q, P).has_value());
            CHECK(is_subrule(minimal_subrule(q, P), q, P).has_value());
            ++seen;
        }
    }
}

TEST_CASE("minimal core keeps exactly the changed part") {
    const auto P = LabelPoset::flat({"a", "b"});
    // a - a - b  =>  a   a - b (first edge deleted)
    Graph l = path(P, 3);
    l.set_label(2, P.label("b"));
    Graph r;
    for (int i = 0; i < 3; ++i) r.add_vertex(l.label(i));
    r.add_edge(1, 2, P.label("a"));
    GraphMap f = GraphMap::identity(l);
    f.edges = {unmapped, 0};
    const Rule p = rule_from_map(l, r, f, P);
    const Core core = minimal_core(p, P);
    CHECK(core.rule.left.vertex_count() == 2);
    CHECK(core.rule.left.edge_count() == 1);
    CHECK(core.rule.right.edge_count() == 0);
    for (VertexId v = 0; v < 2; ++v) CHECK(core.rule.left.label(v) == P.bottom());
    CHECK(is_subrule(core.rule, p, P).has_value());
    CHECK_FALSE(is_subrule(p, core.rule, P).has_value());
}
