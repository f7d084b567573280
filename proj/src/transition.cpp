#include "ruleinfer/transition.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ruleinfer {

namespace {

constexpr std::uint64_t src_tag = 1ull << 60;
constexpr std::uint64_t tgt_tag = 2ull << 60;
constexpr std::uint64_t link_out = 3ull << 60;
constexpr std::uint64_t link_in = (3ull << 60) | 1;

std::uint64_t side_token(std::uint64_t side, bool kept, const Edge& e, VertexId from) {
    return side | (static_cast<std::uint64_t>(kept) << 48) | edge_token(e, from);
}

} // namespace

CanonicalCode transition_code(const Graph& g, const GraphMap& f, const Graph& h) {
    ColoredGraph c;
    for (VertexId v = 0; v < g.vertex_count(); ++v) c.add_vertex(src_tag | g.label(v).id);
    const auto offset = static_cast<std::uint32_t>(g.vertex_count());
    for (VertexId v = 0; v < h.vertex_count(); ++v) c.add_vertex(tgt_tag | h.label(v).id);
    std::vector<char> in_image(h.edge_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        const bool kept = f.edges[e] != unmapped;
        if (kept) in_image[f.edges[e]] = 1;
        c.add_arc(ed.source, ed.target, side_token(src_tag, kept, ed, ed.source));
        c.add_arc(ed.target, ed.source, side_token(src_tag, kept, ed, ed.target));
    }
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        const Edge& ed = h.edge(e);
        c.add_arc(offset + ed.source, offset + ed.target, side_token(tgt_tag, in_image[e], ed, ed.source));
        c.add_arc(offset + ed.target, offset + ed.source, side_token(tgt_tag, in_image[e], ed, ed.target));
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (f.vertices[v] == unmapped) continue;
        c.add_arc(v, offset + f.vertices[v], link_out);
        c.add_arc(offset + f.vertices[v], v, link_in);
    }
    return canonical_form(c).code;
}

bool transitions_equivalent(const Transition& a, const Transition& b) {
    return transition_code(a) == transition_code(b);
}

Transition normalize(const Graph& g, const GraphMap& f, const Graph& h) {
    std::size_t count = 0;
    const auto comp = g.components(&count);
    std::vector<char> active(count, 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const VertexId w = f.vertices[v];
        if (w == unmapped || g.label(v) != h.label(w) || g.degree(v) != h.degree(w)) active[comp[v]] = 1;
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeId x = f.edges[e];
        if (x == unmapped || g.edge(e).label != h.edge(x).label) active[comp[g.edge(e).source]] = 1;
    }
    std::vector<char> keep_g(g.vertex_count(), 0);
    std::vector<char> keep_h(h.vertex_count(), 1);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        keep_g[v] = active[comp[v]];
        if (!keep_g[v]) keep_h[f.vertices[v]] = 0;
    }
    Subgraph gs = subgraph(g, keep_g);
    Subgraph hs = subgraph(h, keep_h);
    Transition t{gs.graph, GraphMap::empty_for(gs.graph), hs.graph};
    for (VertexId v = 0; v < gs.graph.vertex_count(); ++v) {
        const VertexId w = f.vertices[gs.vertex_to_old[v]];
        if (w != unmapped) t.map.vertices[v] = hs.vertex_to_new[w];
    }
    for (EdgeId e = 0; e < gs.graph.edge_count(); ++e) {
        const EdgeId x = f.edges[gs.edge_to_old[e]];
        if (x != unmapped) t.map.edges[e] = hs.edge_to_new[x];
    }
    return t;
}

CanonicalCode normalized_code(const Graph& g, const GraphMap& f, const Graph& h) {
    return transition_code(normalize(g, f, h));
}

std::size_t TransitionSystem::add_input(Graph g) {
    inputs_.push_back(std::move(g));
    return inputs_.size() - 1;
}

std::size_t TransitionSystem::add_transition(std::size_t source, GraphMap map, Graph target, std::string name) {
    if (source >= inputs_.size()) throw RuleError("transition source is not an input graph");
    const Graph& g = inputs_[source];
    // Validates shape, injectivity and incidence.
    (void)rule_from_map(g, target, map, poset_);
    const std::size_t position = loaded_++;
    CanonicalCode code = transition_code(g, map, target);
    if (auto it = by_code_.find(code); it != by_code_.end()) {
        transitions_[it->second].merged.push_back(position);
        return it->second;
    }
    transitions_.push_back(SystemTransition{source, std::move(map), std::move(target), std::move(name), {position}});
    by_code_.emplace(std::move(code), transitions_.size() - 1);
    return transitions_.size() - 1;
}

Transition TransitionSystem::transition(std::size_t i) const {
    const SystemTransition& t = transitions_.at(i);
    return Transition{inputs_.at(t.source), t.map, t.target};
}

Rule maximum_rule(const Graph& g, const GraphMap& f, const Graph& h, const LabelPoset& poset) {
    return rule_from_map(g, h, f, poset);
}

bool generates(const Rule& p, const Transition& t, const LabelPoset& poset) {
    return find_generation(SpanInfo::of(p), SpanInfo::of(t.source, t.map, t.target), poset).has_value();
}

bool generates_exhaustive(const Rule& p, const Transition& t, const LabelPoset& poset) {
    const CanonicalCode want = transition_code(t);
    const SpanInfo info = SpanInfo::of(p);
    bool found = false;
    for_each_monomorphism(p.left, t.source, poset, MatchOptions{}, [&](const Morphism& m) {
        Derivation d;
        if (try_apply(info, t.source, m, d) == ApplyStatus::ok &&
            transition_code(t.source, d.track, d.output) == want) {
            found = true;
            return false;
        }
        return true;
    });
    return found;
}

SystemIndex::SystemIndex(const TransitionSystem& system) : system_(&system) {
    const auto& ts = system.transitions();
    spans_.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Graph& g = system.inputs()[ts[i].source];
        spans_.push_back(SpanInfo::of(g, ts[i].map, ts[i].target));
        codes_.push_back(transition_code(g, ts[i].map, ts[i].target));
        normal_codes_.push_back(normalized_code(g, ts[i].map, ts[i].target));
        normal_set_.emplace(normal_codes_.back(), i);
    }
}

void for_each_derivation(const Rule& p, const TransitionSystem& system,
                         const std::function<bool(std::size_t, const Derivation&)>& visit, std::size_t limit) {
    const SpanInfo info = SpanInfo::of(p);
    for (std::size_t s = 0; s < system.inputs().size(); ++s) {
        const Graph& g = system.inputs()[s];
        std::size_t count = 0;
        bool go_on = true;
        for_each_monomorphism(p.left, g, system.poset(), MatchOptions{}, [&](const Morphism& m) {
            Derivation d;
            if (try_apply(info, g, m, d) != ApplyStatus::ok) return true;
            if (++count > limit) throw DerivationError("derivation limit exceeded on input " + std::to_string(s));
            go_on = visit(s, d);
            return go_on;
        });
        if (!go_on) return;
    }
}

std::vector<GeneratedTransition> generated_transitions(const std::vector<Rule>& rules,
                                                       const TransitionSystem& system, std::size_t limit) {
    std::map<CanonicalCode, GeneratedTransition> seen;
    for (const Rule& p : rules) {
        for_each_derivation(
            p, system,
            [&](std::size_t s, const Derivation& d) {
                const Graph& g = system.inputs()[s];
                CanonicalCode code = normalized_code(g, d.track, d.output);
                if (!seen.count(code)) {
                    seen.emplace(code, GeneratedTransition{s, Transition{g, d.track, d.output}, code});
                }
                return true;
            },
            limit);
    }
    std::vector<GeneratedTransition> out;
    out.reserve(seen.size());
    for (auto& [code, t] : seen) out.push_back(std::move(t));
    return out;
}

std::vector<CanonicalCode> spurious_codes(const Rule& p, const SystemIndex& index, bool stop_at_first,
                                          std::size_t limit) {
    std::set<CanonicalCode> out;
    const TransitionSystem& system = index.system();
    for_each_derivation(
        p, system,
        [&](std::size_t s, const Derivation& d) {
            CanonicalCode code = normalized_code(system.inputs()[s], d.track, d.output);
            if (!index.is_input_normal(code)) {
                out.insert(std::move(code));
                if (stop_at_first) return false;
            }
            return true;
        },
        limit);
    return {out.begin(), out.end()};
}

GenerationReport check(const std::vector<Rule>& rules, const TransitionSystem& system) {
    GenerationReport report;
    const SystemIndex index(system);
    std::vector<SpanInfo> spans;
    spans.reserve(rules.size());
    for (const Rule& p : rules) spans.push_back(SpanInfo::of(p));
    for (std::size_t t = 0; t < system.transitions().size(); ++t) {
        const bool hit = std::any_of(spans.begin(), spans.end(), [&](const SpanInfo& s) {
            return find_generation(s, index.span(t), system.poset()).has_value();
        });
        if (!hit) report.missing.push_back(t);
    }
    for (auto& g : generated_transitions(rules, system)) {
        report.generated.push_back(g.normal_code);
        if (!index.is_input_normal(g.normal_code)) report.spurious.push_back(std::move(g));
    }
    return report;
}

std::vector<PathologyPair> detect_pathology(const TransitionSystem& system, std::size_t max_pairs) {
    std::vector<PathologyPair> out;
    const SystemIndex index(system);
    for (std::size_t t = 0; t < system.transitions().size() && out.size() < max_pairs; ++t) {
        const Transition tr = system.transition(t);
        const Rule p = maximum_rule(tr, system.poset());
        std::set<CanonicalCode> reported;
        for_each_derivation(p, system, [&](std::size_t s, const Derivation& d) {
            const Graph& g = system.inputs()[s];
            CanonicalCode code = normalized_code(g, d.track, d.output);
            if (!index.is_input_normal(code) && reported.insert(code).second) {
                out.push_back(PathologyPair{t, GeneratedTransition{s, Transition{g, d.track, d.output}, code}});
            }
            return out.size() < max_pairs;
        });
    }
    return out;
}

std::vector<Graph> combine_inputs(const std::vector<Graph>& parts, std::size_t max_parts) {
    std::vector<Graph> out;
    std::set<CanonicalCode> seen;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, const Graph&)> rec = [&](std::size_t from, const Graph& acc) {
        if (!pick.empty() && seen.insert(canonical_code(acc)).second) out.push_back(acc);
        if (pick.size() == max_parts) return;
        for (std::size_t i = from; i < parts.size(); ++i) {
            pick.push_back(i);
            rec(i, disjoint_union(acc, parts[i]).graph);
            pick.pop_back();
        }
    };
    rec(0, Graph());
    return out;
}

} // namespace ruleinfer
