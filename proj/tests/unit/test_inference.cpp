#include <doctest.h>

#include <algorithm>
#include <set>

#include "ruleinfer/derivation.hpp"
#include "ruleinfer/generators.hpp"
#include "ruleinfer/inference.hpp"
#include "test_support.hpp"

using namespace ruleinfer;
using namespace testing;

namespace {

// Recolour the middle vertex of a labelled path a-?-b.
Rule recolour(const LabelPoset& P, const char* left, const char* mid, const char* right, const char* to) {
    Graph l;
    l.add_vertex(P.label(left));
    l.add_vertex(P.label(mid));
    l.add_vertex(P.label(right));
    l.add_edge(0, 1, P.label("e"));
    l.add_edge(1, 2, P.label("e"));
    Graph r = l;
    r.set_label(1, P.label(to));
    return rule_from_map(l, r, GraphMap::identity(l), P);
}

} // namespace

TEST_CASE("common subrules of two recolouring rules") {
    const auto P = LabelPoset::flat({"w", "k", "e"});
    const Rule p1 = recolour(P, "w", "w", "k", "k");
    const Rule p2 = recolour(P, "k", "w", "k", "k");
    InferenceConfig cfg;
    const auto qs = common_subrules(p1, p2, P, cfg);
    REQUIRE(qs.size() == 1);
    // The shared part is the recoloured vertex with its k neighbour.
    CHECK(qs[0].left.vertex_count() == 2);
    CHECK(is_subrule(qs[0], p1, P).has_value());
    CHECK(is_subrule(qs[0], p2, P).has_value());
    // A rule is its own unique maximal common subrule.
    const auto self = common_subrules(p1, p1, P, cfg);
    REQUIRE(self.size() == 1);
    CHECK(rules_isomorphic(self[0], canonical_rule(p1, P)));
    // Opposite recolourings share nothing.
    CHECK(common_subrules(p1, recolour(P, "w", "k", "k", "w"), P, cfg).empty());
}

TEST_CASE("label weakening toward bottom") {
    const auto P = LabelPoset::flat({"w", "k", "e"});
    const Rule p1 = recolour(P, "w", "w", "w", "k");
    const Rule p2 = recolour(P, "k", "w", "k", "k");
    InferenceConfig off;
    const auto strict = common_subrules(p1, p2, P, off);
    REQUIRE(strict.size() == 1);
    CHECK(strict[0].left.vertex_count() == 1);
    InferenceConfig weak;
    weak.epsilon = EpsilonPolicy::vertices;
    const auto loose = common_subrules(p1, p2, P, weak);
    REQUIRE(loose.size() == 1);
    CHECK(loose[0].left.vertex_count() == 3);
    CHECK(is_subrule(loose[0], p1, P).has_value());
    CHECK(is_subrule(loose[0], p2, P).has_value());
    CHECK(is_subrule(strict[0], loose[0], P).has_value());
}

TEST_CASE("candidate pool invariants on a small grammar") {
    const auto sys = gen_grammar({GrammarEncoding::marked, 3});
    const SystemIndex index(sys);
    InferenceConfig cfg;
    cfg.epsilon = EpsilonPolicy::vertices;
    auto pool = build_candidate_pool(index, cfg);
    const auto& P = sys.poset();
    REQUIRE(pool.universe == sys.transitions().size());
    std::set<CanonicalCode> codes;
    for (const auto& c : pool.candidates) {
        CHECK(codes.insert(c.code).second);
        CHECK(c.code == rule_code(canonical_rule(c.rule, P)));
        CHECK(c.coverage == coverage(c.rule, index));
    }
    for (std::size_t t = 0; t < sys.transitions().size(); ++t) {
        const auto code = rule_code(canonical_rule(maximum_rule(sys.transition(t), P), P));
        CHECK(codes.count(code) == 1);
    }
    compute_spurious(pool, index, false);
    // Coverage shrinks and spurious sets grow toward superrules.
    std::size_t pairs = 0;
    for (const auto& a : pool.candidates) {
        for (const auto& b : pool.candidates) {
            if (&a == &b || !is_subrule(a.rule, b.rule, P)) continue;
            CHECK(b.coverage.is_subset_of(a.coverage));
            CHECK(std::includes(a.spurious.begin(), a.spurious.end(), b.spurious.begin(), b.spurious.end()));
            CHECK(a.coverage != b.coverage); // class maxima only
            ++pairs;
        }
    }
    CHECK(pairs > 0);
    const auto exact = exact_filter(pool);
    for (const auto& c : exact.candidates) CHECK(c.spurious.empty());
    const std::string text = format_pool(pool);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(pool.candidates.size()) + 2);
    CHECK(hasse_dot(exact, P).rfind("digraph", 0) == 0);
}

TEST_CASE("skipping spurious candidates keeps every spurious-free one") {
    const auto sys = gen_grammar({GrammarEncoding::undirected, 3});
    const SystemIndex index(sys);
    InferenceConfig all;
    all.epsilon = EpsilonPolicy::vertices;
    InferenceConfig lean = all;
    lean.expand_spurious = false;
    auto a = build_candidate_pool(index, all);
    auto b = build_candidate_pool(index, lean);
    compute_spurious(a, index, true);
    compute_spurious(b, index, true);
    std::set<CanonicalCode> ea, eb;
    for (const auto& c : a.candidates)
        if (c.spurious.empty()) ea.insert(c.code);
    for (const auto& c : b.candidates)
        if (c.spurious.empty()) eb.insert(c.code);
    CHECK(ea == eb);
    CHECK(b.candidates.size() <= a.candidates.size());
}

TEST_CASE("tic-tac-toe minimal rule covers every move") {
    const auto sys = gen_tictactoe({'X'});
    const SystemIndex index(sys);
    const Rule core = minimal_subrule(maximum_rule(sys.transition(0), sys.poset()), sys.poset());
    CHECK(core.left.vertex_count() == 1);
    CHECK(coverage(core, index).all());
}
