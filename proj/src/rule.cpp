#include "ruleinfer/rule.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace ruleinfer {

namespace {

enum Kind : std::uint64_t { preserved = 0, deleted = 1, created = 2 };

std::uint64_t vertex_color(Kind k, Label left, Label right) {
    return (static_cast<std::uint64_t>(k) << 60) | (static_cast<std::uint64_t>(left.id) << 30) | right.id;
}

// Orientation nibble: 0 undirected, 1 outgoing, 2 incoming.
std::uint64_t arc_token(Kind k, std::uint64_t orient, Label left, Label right) {
    return (static_cast<std::uint64_t>(k) << 62) | (orient << 58) | (static_cast<std::uint64_t>(left.id) << 29) |
           right.id;
}

} // namespace

void validate_rule(const Rule& p, const LabelPoset& poset) {
    if (p.l.vertices.size() != p.context.vertex_count() || p.l.edges.size() != p.context.edge_count() ||
        p.r.vertices.size() != p.context.vertex_count() || p.r.edges.size() != p.context.edge_count()) {
        throw RuleError("rule legs do not match the context graph");
    }
    if (!p.l.is_total() || !p.r.is_total()) throw RuleError("rule legs must be total (dangling context element)");
    if (!p.l.is_injective()) throw RuleError("left morphism is not injective");
    if (!p.r.is_injective()) throw RuleError("right morphism is not injective (only the monic fragment is supported)");
    if (!is_monomorphism(p.l, p.context, p.left, poset)) throw RuleError("left morphism violates incidence or labels");
    if (!is_monomorphism(p.r, p.context, p.right, poset)) throw RuleError("right morphism violates incidence or labels");
}

GraphMap element_map(const Rule& p) {
    return compose(invert(p.l, p.left), p.r);
}

Rule rule_from_map(const Graph& left, const Graph& right, const GraphMap& f, const LabelPoset& poset) {
    if (f.vertices.size() != left.vertex_count() || f.edges.size() != left.edge_count()) {
        throw RuleError("element map does not fit the source graph");
    }
    if (!f.is_injective()) throw RuleError("element map is not injective");
    Rule p;
    p.left = left;
    p.right = right;
    std::vector<VertexId> k_of(left.vertex_count(), unmapped);
    for (VertexId v = 0; v < left.vertex_count(); ++v) {
        const VertexId w = f.vertices[v];
        if (w == unmapped) continue;
        if (w >= right.vertex_count()) throw RuleError("element map leaves the target graph");
        k_of[v] = p.context.add_vertex(poset.meet(left.label(v), right.label(w)));
        p.l.vertices.push_back(v);
        p.r.vertices.push_back(w);
    }
    for (EdgeId e = 0; e < left.edge_count(); ++e) {
        const EdgeId g = f.edges[e];
        if (g == unmapped) continue;
        const Edge& ed = left.edge(e);
        if (g >= right.edge_count()) throw RuleError("element map leaves the target graph");
        const Edge& ge = right.edge(g);
        const VertexId a = f.vertices[ed.source];
        const VertexId b = f.vertices[ed.target];
        if (a == unmapped || b == unmapped) throw RuleError("mapped edge with unmapped endpoint");
        const bool ok = ge.directed == ed.directed &&
                        ((ge.source == a && ge.target == b) || (!ed.directed && ge.source == b && ge.target == a));
        if (!ok) throw RuleError("element map violates incidence");
        p.context.add_edge(k_of[ed.source], k_of[ed.target], poset.meet(ed.label, ge.label), ed.directed);
        p.l.edges.push_back(e);
        p.r.edges.push_back(g);
    }
    return p;
}

Rule identity_rule(const Graph& g) {
    Rule p;
    p.left = g;
    p.context = g;
    p.right = g;
    p.l = GraphMap::identity(g);
    p.r = GraphMap::identity(g);
    return p;
}

RuleEncoding encode_rule(const Rule& p) {
    const GraphMap f = element_map(p);
    const GraphMap finv = invert(f, p.right);
    RuleEncoding enc;
    std::vector<std::uint32_t> of_left(p.left.vertex_count());
    std::vector<std::uint32_t> of_right(p.right.vertex_count(), unmapped);
    for (VertexId v = 0; v < p.left.vertex_count(); ++v) {
        const VertexId w = f.vertices[v];
        const std::uint64_t c = w == unmapped ? vertex_color(deleted, p.left.label(v), Label{0})
                                              : vertex_color(preserved, p.left.label(v), p.right.label(w));
        of_left[v] = enc.graph.add_vertex(c);
        enc.vertex_origin.push_back({0, v});
        if (w != unmapped) of_right[w] = of_left[v];
    }
    for (VertexId w = 0; w < p.right.vertex_count(); ++w) {
        if (of_right[w] != unmapped) continue;
        of_right[w] = enc.graph.add_vertex(vertex_color(created, Label{0}, p.right.label(w)));
        enc.vertex_origin.push_back({1, w});
    }
    auto add = [&](std::uint32_t a, std::uint32_t b, const Edge& e, Kind k, Label ll, Label rl) {
        if (e.directed) {
            enc.graph.add_arc(a, b, arc_token(k, 1, ll, rl));
            enc.graph.add_arc(b, a, arc_token(k, 2, ll, rl));
        } else {
            enc.graph.add_edge(a, b, arc_token(k, 0, ll, rl));
        }
    };
    for (EdgeId e = 0; e < p.left.edge_count(); ++e) {
        const Edge& ed = p.left.edge(e);
        const std::uint32_t a = of_left[ed.source];
        const std::uint32_t b = of_left[ed.target];
        if (f.edges[e] == unmapped) {
            add(a, b, ed, deleted, ed.label, Label{0});
        } else {
            add(a, b, ed, preserved, ed.label, p.right.edge(f.edges[e]).label);
        }
    }
    for (EdgeId e = 0; e < p.right.edge_count(); ++e) {
        if (finv.edges[e] != unmapped) continue;
        const Edge& ed = p.right.edge(e);
        add(of_right[ed.source], of_right[ed.target], ed, created, Label{0}, ed.label);
    }
    return enc;
}

CanonicalCode rule_code(const Rule& p) { return canonical_form(encode_rule(p).graph).code; }

Rule canonical_rule(const Rule& p, const LabelPoset& poset) {
    const RuleEncoding enc = encode_rule(p);
    const CanonicalForm form = canonical_form(enc.graph);
    const GraphMap f = element_map(p);
    // Rebuild L and R with vertices in canonical order.
    Graph left;
    Graph right;
    std::vector<VertexId> new_left(p.left.vertex_count(), unmapped);
    std::vector<VertexId> new_right(p.right.vertex_count(), unmapped);
    for (std::uint32_t u : form.order) {
        const UnionPart o = enc.vertex_origin[u];
        if (o.side == 0) {
            new_left[o.index] = left.add_vertex(p.left.label(o.index));
            const VertexId w = f.vertices[o.index];
            if (w != unmapped) new_right[w] = right.add_vertex(p.right.label(w));
        } else {
            new_right[o.index] = right.add_vertex(p.right.label(o.index));
        }
    }
    std::vector<std::uint32_t> pos(form.order.size());
    for (std::uint32_t i = 0; i < form.order.size(); ++i) pos[form.order[i]] = i;
    // Edges sorted by canonical endpoint positions, then kind.
    auto edge_key = [&](const Graph& g, EdgeId e, const std::vector<VertexId>& renum) {
        const Edge& ed = g.edge(e);
        VertexId a = renum[ed.source];
        VertexId b = renum[ed.target];
        if (!ed.directed && b < a) std::swap(a, b);
        return std::tuple<VertexId, VertexId, bool, std::uint32_t>(a, b, ed.directed, ed.label.id);
    };
    std::vector<EdgeId> left_edges(p.left.edge_count());
    std::iota(left_edges.begin(), left_edges.end(), 0u);
    std::sort(left_edges.begin(), left_edges.end(), [&](EdgeId x, EdgeId y) {
        return edge_key(p.left, x, new_left) < edge_key(p.left, y, new_left);
    });
    std::vector<EdgeId> new_left_edge(p.left.edge_count());
    for (EdgeId e : left_edges) {
        const Edge& ed = p.left.edge(e);
        new_left_edge[e] = left.add_edge(new_left[ed.source], new_left[ed.target], ed.label, ed.directed);
    }
    std::vector<EdgeId> right_edges(p.right.edge_count());
    std::iota(right_edges.begin(), right_edges.end(), 0u);
    std::sort(right_edges.begin(), right_edges.end(), [&](EdgeId x, EdgeId y) {
        return edge_key(p.right, x, new_right) < edge_key(p.right, y, new_right);
    });
    std::vector<EdgeId> new_right_edge(p.right.edge_count());
    for (EdgeId e : right_edges) {
        const Edge& ed = p.right.edge(e);
        new_right_edge[e] = right.add_edge(new_right[ed.source], new_right[ed.target], ed.label, ed.directed);
    }
    GraphMap g = GraphMap::empty_for(left);
    for (VertexId v = 0; v < p.left.vertex_count(); ++v) {
        if (f.vertices[v] != unmapped) g.vertices[new_left[v]] = new_right[f.vertices[v]];
    }
    for (EdgeId e = 0; e < p.left.edge_count(); ++e) {
        if (f.edges[e] != unmapped) g.edges[new_left_edge[e]] = new_right_edge[f.edges[e]];
    }
    return rule_from_map(left, right, g, poset);
}

bool rules_isomorphic(const Rule& a, const Rule& b) { return rule_code(a) == rule_code(b); }

RuleSummary summarize(const Rule& p) {
    RuleSummary s;
    const GraphMap f = element_map(p);
    for (VertexId v = 0; v < p.left.vertex_count(); ++v) {
        if (f.vertices[v] == unmapped) {
            ++s.deleted_vertices;
        } else {
            ++s.preserved_vertices;
            if (p.left.label(v) != p.right.label(f.vertices[v])) ++s.relabeled_vertices;
        }
    }
    for (EdgeId e = 0; e < p.left.edge_count(); ++e) {
        if (f.edges[e] == unmapped) {
            ++s.deleted_edges;
        } else {
            ++s.preserved_edges;
            if (p.left.edge(e).label != p.right.edge(f.edges[e]).label) ++s.relabeled_edges;
        }
    }
    s.created_vertices = p.right.vertex_count() - s.preserved_vertices;
    s.created_edges = p.right.edge_count() - s.preserved_edges;
    return s;
}

} // namespace ruleinfer
