#include "ruleinfer/derivation.hpp"

namespace ruleinfer {

SpanInfo SpanInfo::of(const Graph& left, const GraphMap& map, const Graph& right) {
    SpanInfo s;
    s.left = &left;
    s.right = &right;
    s.map = map;
    s.inverse = invert(map, right);
    for (auto v : map.vertices) s.deleted_vertices += v == unmapped;
    for (auto e : map.edges) s.deleted_edges += e == unmapped;
    for (auto v : s.inverse.vertices) s.created_vertices += v == unmapped;
    for (auto e : s.inverse.edges) s.created_edges += e == unmapped;
    return s;
}

ApplyStatus try_apply(const SpanInfo& rule, const Graph& g, const GraphMap& match, Derivation& out) {
    const Graph& L = *rule.left;
    const Graph& R = *rule.right;
    const GraphMap& f = rule.map;
    std::vector<char> del_v(g.vertex_count(), 0);
    std::vector<char> del_e(g.edge_count(), 0);
    // For preserved host elements hit by the match: the rule element they came from.
    std::vector<VertexId> from_v(g.vertex_count(), unmapped);
    std::vector<EdgeId> from_e(g.edge_count(), unmapped);
    for (VertexId a = 0; a < L.vertex_count(); ++a) {
        if (f.vertices[a] == unmapped) del_v[match.vertices[a]] = 1;
        else from_v[match.vertices[a]] = a;
    }
    for (EdgeId e = 0; e < L.edge_count(); ++e) {
        if (f.edges[e] == unmapped) del_e[match.edges[e]] = 1;
        else from_e[match.edges[e]] = e;
    }
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (!del_v[x]) continue;
        for (EdgeId e : g.incident(x)) {
            if (!del_e[e]) return ApplyStatus::dangling;
        }
    }
    out.match = match;
    out.output = Graph();
    out.track = GraphMap::empty_for(g);
    out.comatch = GraphMap::empty_for(R);
    Graph& h = out.output;
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (del_v[x]) continue;
        Label lab = g.label(x);
        if (const VertexId a = from_v[x]; a != unmapped) {
            const VertexId b = f.vertices[a];
            if (L.label(a) != R.label(b)) lab = R.label(b);
            out.comatch.vertices[b] = static_cast<VertexId>(h.vertex_count());
        }
        out.track.vertices[x] = h.add_vertex(lab);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (del_e[e]) continue;
        const Edge& ed = g.edge(e);
        Label lab = ed.label;
        if (const EdgeId a = from_e[e]; a != unmapped) {
            const EdgeId b = f.edges[a];
            if (L.edge(a).label != R.edge(b).label) lab = R.edge(b).label;
            out.comatch.edges[b] = static_cast<EdgeId>(h.edge_count());
        }
        out.track.edges[e] = h.add_edge(out.track.vertices[ed.source], out.track.vertices[ed.target], lab, ed.directed);
    }
    for (VertexId b = 0; b < R.vertex_count(); ++b) {
        if (rule.inverse.vertices[b] == unmapped) out.comatch.vertices[b] = h.add_vertex(R.label(b));
    }
    for (EdgeId b = 0; b < R.edge_count(); ++b) {
        if (rule.inverse.edges[b] != unmapped) continue;
        const Edge& ed = R.edge(b);
        const VertexId s = out.comatch.vertices[ed.source];
        const VertexId t = out.comatch.vertices[ed.target];
        if (h.find_edge(s, t, ed.directed)) return ApplyStatus::not_simple;
        out.comatch.edges[b] = h.add_edge(s, t, ed.label, ed.directed);
    }
    return ApplyStatus::ok;
}

Derivation apply(const Rule& p, const Graph& g, const GraphMap& match, const LabelPoset& poset) {
    if (!is_monomorphism(match, p.left, g, poset)) throw DerivationError("match is not an injective morphism");
    Derivation d;
    switch (try_apply(SpanInfo::of(p), g, match, d)) {
    case ApplyStatus::ok:
        return d;
    case ApplyStatus::dangling:
        throw DerivationError("dangling condition violated");
    case ApplyStatus::not_simple:
        throw DerivationError("result would not be a simple graph");
    }
    return d;
}

std::vector<Derivation> enumerate_derivations(const Rule& p, const Graph& g, const LabelPoset& poset,
                                              std::size_t limit) {
    const SpanInfo info = SpanInfo::of(p);
    std::vector<Derivation> out;
    MatchOptions opt;
    for_each_monomorphism(p.left, g, poset, opt, [&](const Morphism& m) {
        Derivation d;
        if (try_apply(info, g, m, d) == ApplyStatus::ok) {
            if (out.size() == limit) throw DerivationError("derivation limit exceeded");
            out.push_back(std::move(d));
        }
        return true;
    });
    return out;
}

Rule induced_rule(const Graph& g, const Derivation& d, const LabelPoset& poset) {
    return rule_from_map(g, d.output, d.track, poset);
}

std::optional<GenerationWitness> find_generation(const SpanInfo& rule, const SpanInfo& target,
                                                 const LabelPoset& poset) {
    if (rule.deleted_vertices != target.deleted_vertices || rule.deleted_edges != target.deleted_edges ||
        rule.created_vertices != target.created_vertices || rule.created_edges != target.created_edges) {
        return std::nullopt;
    }
    if (target.left->vertex_count() - target.deleted_vertices + target.created_vertices !=
        target.right->vertex_count()) {
        return std::nullopt;
    }
    const Graph& L = *rule.left;
    const Graph& R = *rule.right;
    const Graph& G = *target.left;
    const Graph& H = *target.right;
    const GraphMap& fp = rule.map;
    const GraphMap& f = target.map;
    MatchOptions opt;
    opt.vertex_filter = [&](VertexId a, VertexId x) {
        const VertexId b = fp.vertices[a];
        const VertexId y = f.vertices[x];
        if ((b == unmapped) != (y == unmapped)) return false;
        if (b == unmapped) return true;
        const Label expect = L.label(a) != R.label(b) ? R.label(b) : G.label(x);
        return expect == H.label(y);
    };
    opt.edge_filter = [&](EdgeId a, EdgeId x) {
        const EdgeId b = fp.edges[a];
        const EdgeId y = f.edges[x];
        if ((b == unmapped) != (y == unmapped)) return false;
        if (b == unmapped) return true;
        const Label expect = L.edge(a).label != R.edge(b).label ? R.edge(b).label : G.edge(x).label;
        return expect == H.edge(y).label;
    };
    for (VertexId a = 0; a < L.vertex_count(); ++a) {
        const VertexId b = fp.vertices[a];
        if (b == unmapped || L.label(a) != R.label(b)) opt.first.push_back(a);
    }
    std::optional<GenerationWitness> found;
    for_each_monomorphism(L, G, poset, opt, [&](const Morphism& m) {
        Derivation d;
        if (try_apply(rule, G, m, d) != ApplyStatus::ok) return true;
        const Graph& hd = d.output;
        if (hd.edge_count() != H.edge_count()) return true;
        GraphMap anchor = GraphMap::empty_for(hd);
        for (VertexId x = 0; x < G.vertex_count(); ++x) {
            if (d.track.vertices[x] != unmapped) anchor.vertices[d.track.vertices[x]] = f.vertices[x];
        }
        // Unchanged-context labels were checked by the filters; labels of
        // preserved elements outside the match are copied, so compare them too.
        for (VertexId x = 0; x < G.vertex_count(); ++x) {
            const VertexId y = d.track.vertices[x];
            if (y != unmapped && hd.label(y) != H.label(f.vertices[x])) return true;
        }
        for (EdgeId e = 0; e < G.edge_count(); ++e) {
            const EdgeId y = d.track.edges[e];
            if (y == unmapped) continue;
            if (f.edges[e] == unmapped) return true;
            if (hd.edge(y).label != H.edge(f.edges[e]).label) return true;
        }
        anchor.edges = std::vector<EdgeId>(hd.edge_count(), unmapped);
        for (EdgeId e = 0; e < G.edge_count(); ++e) {
            if (d.track.edges[e] != unmapped) anchor.edges[d.track.edges[e]] = f.edges[e];
        }
        std::optional<Morphism> iso;
        try {
            iso = is_isomorphic(hd, H, poset, &anchor);
        } catch (const GraphError&) {
            return true; // anchor inconsistent: preserved structure differs
        }
        if (!iso) return true;
        found = GenerationWitness{m, std::move(*iso), std::move(d)};
        return false;
    });
    return found;
}

std::optional<GenerationWitness> is_subrule(const Rule& p1, const Rule& p2, const LabelPoset& poset) {
    const SpanInfo a = SpanInfo::of(p1);
    const SpanInfo b = SpanInfo::of(p2);
    return find_generation(a, b, poset);
}

Core minimal_core(const Rule& p, const LabelPoset& poset) {
    const GraphMap f = element_map(p);
    const GraphMap finv = invert(f, p.right);
    const Graph& L = p.left;
    const Graph& R = p.right;
    std::vector<char> keep_lv(L.vertex_count(), 0), keep_le(L.edge_count(), 0);
    std::vector<char> keep_rv(R.vertex_count(), 0), keep_re(R.edge_count(), 0);
    std::vector<char> changed_lv(L.vertex_count(), 0);
    for (VertexId a = 0; a < L.vertex_count(); ++a) {
        const VertexId b = f.vertices[a];
        if (b == unmapped || L.label(a) != R.label(b)) keep_lv[a] = changed_lv[a] = 1;
    }
    for (VertexId b = 0; b < R.vertex_count(); ++b) {
        if (finv.vertices[b] == unmapped) keep_rv[b] = 1;
    }
    for (EdgeId e = 0; e < L.edge_count(); ++e) {
        const EdgeId g = f.edges[e];
        if (g == unmapped || L.edge(e).label != R.edge(g).label) {
            keep_le[e] = 1;
            keep_lv[L.edge(e).source] = keep_lv[L.edge(e).target] = 1;
            if (g != unmapped) keep_re[g] = 1;
        }
    }
    for (EdgeId e = 0; e < R.edge_count(); ++e) {
        if (finv.edges[e] != unmapped) continue;
        keep_re[e] = 1;
        for (VertexId b : {R.edge(e).source, R.edge(e).target}) {
            keep_rv[b] = 1;
            if (finv.vertices[b] != unmapped) keep_lv[finv.vertices[b]] = 1;
        }
    }
    for (VertexId a = 0; a < L.vertex_count(); ++a) {
        if (keep_lv[a] && f.vertices[a] != unmapped) keep_rv[f.vertices[a]] = 1;
    }
    Subgraph ls = subgraph(L, keep_lv, &keep_le);
    Subgraph rs = subgraph(R, keep_rv, &keep_re);
    for (VertexId a = 0; a < L.vertex_count(); ++a) {
        if (!keep_lv[a] || changed_lv[a]) continue;
        ls.graph.set_label(ls.vertex_to_new[a], poset.bottom());
        rs.graph.set_label(rs.vertex_to_new[f.vertices[a]], poset.bottom());
    }
    GraphMap g = GraphMap::empty_for(ls.graph);
    for (VertexId v = 0; v < ls.graph.vertex_count(); ++v) {
        const VertexId b = f.vertices[ls.vertex_to_old[v]];
        if (b != unmapped) g.vertices[v] = rs.vertex_to_new[b];
    }
    for (EdgeId e = 0; e < ls.graph.edge_count(); ++e) {
        const EdgeId b = f.edges[ls.edge_to_old[e]];
        if (b != unmapped) g.edges[e] = rs.edge_to_new[b];
    }
    Core core;
    core.rule = rule_from_map(ls.graph, rs.graph, g, poset);
    core.into_left = GraphMap{ls.vertex_to_old, ls.edge_to_old};
    core.into_right = GraphMap{rs.vertex_to_old, rs.edge_to_old};
    return core;
}

Rule minimal_subrule(const Rule& p, const LabelPoset& poset) { return minimal_core(p, poset).rule; }

} // namespace ruleinfer
