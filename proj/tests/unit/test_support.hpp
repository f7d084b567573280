#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <numeric>
#include <random>
#include <vector>

#include "ruleinfer/graph.hpp"
#include "ruleinfer/labels.hpp"
#include "ruleinfer/morphism.hpp"
#include "ruleinfer/rule.hpp"

namespace testing {

using namespace ruleinfer;

inline Graph path(const LabelPoset& P, std::size_t n, const char* label = "a", bool directed = false) {
    Graph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(P.label(label));
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1, P.label(label), directed);
    return g;
}

inline Graph cycle(const LabelPoset& P, std::size_t n, const char* label = "a", bool directed = false) {
    Graph g = path(P, n, label, directed);
    g.add_edge(n - 1, 0, P.label(label), directed);
    return g;
}

inline Graph complete(const LabelPoset& P, std::size_t n, const char* label = "a") {
    Graph g;
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(P.label(label));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j, P.label(label));
    return g;
}

/// Random simple graph; labels drawn from `labels`, optionally some directed edges.
inline Graph random_graph(std::mt19937& rng, const LabelPoset& P, std::size_t n, double density,
                          const std::vector<std::string>& labels, bool allow_directed = false) {
    Graph g;
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    std::bernoulli_distribution edge(density);
    std::bernoulli_distribution dir(0.3);
    for (std::size_t i = 0; i < n; ++i) g.add_vertex(P.label(labels[pick(rng)]));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!edge(rng)) continue;
            const bool d = allow_directed && dir(rng);
            if (d && std::bernoulli_distribution(0.5)(rng)) g.add_edge(j, i, P.label(labels[pick(rng)]), true);
            else g.add_edge(i, j, P.label(labels[pick(rng)]), d);
        }
    }
    return g;
}

/// Same graph with vertices and edges renumbered by random permutations.
inline Graph shuffled(std::mt19937& rng, const Graph& g, std::vector<VertexId>* perm_out = nullptr) {
    std::vector<VertexId> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<VertexId> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<VertexId>(i);
    Graph h;
    for (std::size_t i = 0; i < perm.size(); ++i) h.add_vertex(g.label(inv[i]));
    std::vector<EdgeId> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    for (EdgeId e : order) {
        const Edge& ed = g.edge(e);
        if (!ed.directed && std::bernoulli_distribution(0.5)(rng)) h.add_edge(perm[ed.target], perm[ed.source], ed.label, false);
        else h.add_edge(perm[ed.source], perm[ed.target], ed.label, ed.directed);
    }
    if (perm_out) *perm_out = perm;
    return h;
}

/// Brute force: every injective vertex map checked against the morphism conditions.
inline std::size_t brute_force_monos(const Graph& p, const Graph& h, const LabelPoset& P, bool iso = false) {
    std::size_t count = 0;
    const std::size_t n = p.vertex_count();
    if (n > h.vertex_count()) return 0;
    std::vector<VertexId> hosts(h.vertex_count());
    std::iota(hosts.begin(), hosts.end(), 0u);
    // Enumerate k-permutations via choosing subsets and permuting.
    std::vector<VertexId> img(n);
    std::vector<char> used(h.vertex_count(), 0);
    auto ok = [&]() {
        for (VertexId v = 0; v < n; ++v) {
            const Label a = p.label(v), b = h.label(img[v]);
            if (iso ? a != b : !P.leq(a, b)) return false;
        }
        for (const Edge& e : p.edges()) {
            auto f = h.find_edge(img[e.source], img[e.target], e.directed);
            if (!f) return false;
            const Label a = e.label, b = h.edge(*f).label;
            if (iso ? a != b : !P.leq(a, b)) return false;
        }
        if (iso && (n != h.vertex_count() || p.edge_count() != h.edge_count())) return false;
        return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            count += ok();
            return;
        }
        for (VertexId w = 0; w < h.vertex_count(); ++w) {
            if (used[w]) continue;
            used[w] = 1;
            img[i] = w;
            rec(i + 1);
            used[w] = 0;
        }
    };
    rec(0);
    return count;
}

/// Random rule built from L, R and a partial element map: some L vertices
/// survive (maybe relabeled), fresh R vertices and edges are added.
inline Rule random_rule(std::mt19937& rng, const LabelPoset& P, const std::vector<std::string>& labels,
                        std::size_t max_left = 3) {
    std::uniform_int_distribution<std::size_t> nl(1, max_left), extra(0, 2), pick(0, labels.size() - 1);
    std::bernoulli_distribution keep(0.7), relabel(0.2), add_edge(0.3);
    for (;;) {
        Graph left = random_graph(rng, P, nl(rng), 0.6, labels);
        Graph right;
        GraphMap f = GraphMap::empty_for(left);
        for (VertexId v = 0; v < left.vertex_count(); ++v) {
            if (!keep(rng)) continue;
            f.vertices[v] = right.add_vertex(relabel(rng) ? P.label(labels[pick(rng)]) : left.label(v));
        }
        for (EdgeId e = 0; e < left.edge_count(); ++e) {
            const Edge& ed = left.edge(e);
            if (f.vertices[ed.source] == unmapped || f.vertices[ed.target] == unmapped || !keep(rng)) continue;
            f.edges[e] = right.add_edge(f.vertices[ed.source], f.vertices[ed.target], ed.label, ed.directed);
        }
        const std::size_t fresh = extra(rng);
        for (std::size_t i = 0; i < fresh; ++i) right.add_vertex(P.label(labels[pick(rng)]));
        for (VertexId a = 0; a < right.vertex_count(); ++a) {
            for (VertexId b = a + 1; b < right.vertex_count(); ++b) {
                if (right.find_edge(a, b, false) || !add_edge(rng)) continue;
                // Never recreate an edge that L had and the rule dropped.
                bool was = false;
                for (EdgeId e = 0; e < left.edge_count(); ++e) {
                    const Edge& ed = left.edge(e);
                    const VertexId s = f.vertices[ed.source], t = f.vertices[ed.target];
                    was |= (s == a && t == b) || (s == b && t == a);
                }
                if (!was) right.add_edge(a, b, P.label(labels[pick(rng)]));
            }
        }
        Rule p = rule_from_map(left, right, f, P);
        bool identity = p.left.vertex_count() == p.context.vertex_count() &&
                        p.right.vertex_count() == p.context.vertex_count() &&
                        p.left.edge_count() == p.context.edge_count() && p.right.edge_count() == p.context.edge_count();
        for (VertexId k = 0; identity && k < p.context.vertex_count(); ++k)
            identity = p.left.label(p.l.vertices[k]) == p.right.label(p.r.vertices[k]);
        if (!identity) return p;
    }
}

} // namespace testing
