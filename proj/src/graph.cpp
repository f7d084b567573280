#include "ruleinfer/graph.hpp"

#include <numeric>
#include <string>

namespace ruleinfer {

VertexId Graph::add_vertex(Label label) {
    vertex_labels_.push_back(label);
    incidence_.emplace_back();
    return static_cast<VertexId>(vertex_labels_.size() - 1);
}

EdgeId Graph::add_edge(VertexId source, VertexId target, Label label, bool directed) {
    if (source >= vertex_count() || target >= vertex_count()) {
        throw GraphError("edge endpoint " + std::to_string(std::max(source, target)) + " does not exist");
    }
    if (source == target) {
        throw GraphError("self-loop on vertex " + std::to_string(source));
    }
    if (find_edge(source, target, directed)) {
        throw GraphError("parallel edge between " + std::to_string(source) + " and " + std::to_string(target));
    }
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{source, target, label, directed});
    incidence_[source].push_back(id);
    incidence_[target].push_back(id);
    return id;
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v, bool directed) const {
    const auto& small = incidence_.at(u).size() <= incidence_.at(v).size() ? incidence_[u] : incidence_[v];
    for (EdgeId e : small) {
        const Edge& ed = edges_[e];
        if (ed.directed != directed) continue;
        if (ed.source == u && ed.target == v) return e;
        if (!directed && ed.source == v && ed.target == u) return e;
    }
    return std::nullopt;
}

std::vector<std::uint32_t> Graph::components(std::size_t* count) const {
    std::vector<std::uint32_t> comp(vertex_count(), unmapped);
    std::uint32_t next = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < vertex_count(); ++s) {
        if (comp[s] != unmapped) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const VertexId v = stack.back();
            stack.pop_back();
            for (EdgeId e : incidence_[v]) {
                const VertexId w = edges_[e].other(v);
                if (comp[w] == unmapped) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return comp;
}

DisjointUnion disjoint_union(const Graph& g, const Graph& h) {
    DisjointUnion u;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        u.graph.add_vertex(g.label(v));
        u.vertex_origin.push_back({0, v});
    }
    const auto shift = static_cast<VertexId>(g.vertex_count());
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
        u.graph.add_vertex(h.label(v));
        u.vertex_origin.push_back({1, v});
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        u.graph.add_edge(ed.source, ed.target, ed.label, ed.directed);
        u.edge_origin.push_back({0, e});
    }
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        const Edge& ed = h.edge(e);
        u.graph.add_edge(ed.source + shift, ed.target + shift, ed.label, ed.directed);
        u.edge_origin.push_back({1, e});
    }
    return u;
}

Subgraph subgraph(const Graph& g, const std::vector<char>& keep_vertex, const std::vector<char>* keep_edge) {
    Subgraph s;
    s.vertex_to_new.assign(g.vertex_count(), unmapped);
    s.edge_to_new.assign(g.edge_count(), unmapped);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!keep_vertex[v]) continue;
        s.vertex_to_new[v] = s.graph.add_vertex(g.label(v));
        s.vertex_to_old.push_back(v);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (keep_edge && !(*keep_edge)[e]) continue;
        if (s.vertex_to_new[ed.source] == unmapped || s.vertex_to_new[ed.target] == unmapped) continue;
        s.edge_to_new[e] =
            s.graph.add_edge(s.vertex_to_new[ed.source], s.vertex_to_new[ed.target], ed.label, ed.directed);
        s.edge_to_old.push_back(e);
    }
    return s;
}

} // namespace ruleinfer
