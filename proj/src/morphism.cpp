#include "ruleinfer/morphism.hpp"

#include <algorithm>
#include <span>
#include <string>

namespace ruleinfer {

GraphMap GraphMap::empty_for(const Graph& source) {
    return GraphMap{std::vector<VertexId>(source.vertex_count(), unmapped),
                    std::vector<EdgeId>(source.edge_count(), unmapped)};
}

GraphMap GraphMap::identity(const Graph& g) {
    GraphMap m = empty_for(g);
    for (VertexId v = 0; v < g.vertex_count(); ++v) m.vertices[v] = v;
    for (EdgeId e = 0; e < g.edge_count(); ++e) m.edges[e] = e;
    return m;
}

bool GraphMap::is_total() const noexcept {
    return std::none_of(vertices.begin(), vertices.end(), [](auto v) { return v == unmapped; }) &&
           std::none_of(edges.begin(), edges.end(), [](auto e) { return e == unmapped; });
}

namespace {

bool unique_images(const std::vector<std::uint32_t>& xs) {
    std::vector<std::uint32_t> seen;
    for (auto x : xs) {
        if (x != unmapped) seen.push_back(x);
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

} // namespace

bool GraphMap::is_injective() const { return unique_images(vertices) && unique_images(edges); }

GraphMap compose(const GraphMap& first, const GraphMap& second) {
    GraphMap out{std::vector<VertexId>(first.vertices.size(), unmapped),
                 std::vector<EdgeId>(first.edges.size(), unmapped)};
    for (std::size_t v = 0; v < first.vertices.size(); ++v) {
        if (first.vertices[v] != unmapped) out.vertices[v] = second.vertices.at(first.vertices[v]);
    }
    for (std::size_t e = 0; e < first.edges.size(); ++e) {
        if (first.edges[e] != unmapped) out.edges[e] = second.edges.at(first.edges[e]);
    }
    return out;
}

GraphMap invert(const GraphMap& map, const Graph& target) {
    GraphMap inv = GraphMap::empty_for(target);
    for (std::size_t v = 0; v < map.vertices.size(); ++v) {
        if (map.vertices[v] != unmapped) inv.vertices.at(map.vertices[v]) = static_cast<VertexId>(v);
    }
    for (std::size_t e = 0; e < map.edges.size(); ++e) {
        if (map.edges[e] != unmapped) inv.edges.at(map.edges[e]) = static_cast<EdgeId>(e);
    }
    return inv;
}

bool is_monomorphism(const GraphMap& map, const Graph& source, const Graph& target, const LabelPoset& poset,
                     bool total) {
    if (map.vertices.size() != source.vertex_count() || map.edges.size() != source.edge_count()) return false;
    if (!map.is_injective()) return false;
    for (VertexId v = 0; v < source.vertex_count(); ++v) {
        const VertexId w = map.vertices[v];
        if (w == unmapped) {
            if (total) return false;
            continue;
        }
        if (w >= target.vertex_count() || !poset.leq(source.label(v), target.label(w))) return false;
    }
    for (EdgeId e = 0; e < source.edge_count(); ++e) {
        const Edge& ed = source.edge(e);
        const EdgeId f = map.edges[e];
        const bool ends_mapped = map.vertices[ed.source] != unmapped && map.vertices[ed.target] != unmapped;
        if (f == unmapped) {
            if (total && ends_mapped) return false; // preserves edges
            continue;
        }
        if (!ends_mapped || f >= target.edge_count()) return false;
        const Edge& fe = target.edge(f);
        if (fe.directed != ed.directed || !poset.leq(ed.label, fe.label)) return false;
        const VertexId a = map.vertices[ed.source];
        const VertexId b = map.vertices[ed.target];
        const bool straight = fe.source == a && fe.target == b;
        const bool swapped = fe.source == b && fe.target == a;
        if (!(straight || (!ed.directed && swapped))) return false;
    }
    return true;
}

namespace {

class Matcher {
public:
    Matcher(const Graph& pattern, const Graph& host, const LabelPoset& poset, const MatchOptions& options)
        : p_(pattern), h_(host), poset_(poset), opt_(options) {}

    bool run(const std::function<bool(const Morphism&)>& visit) {
        if (opt_.bijective &&
            (p_.vertex_count() != h_.vertex_count() || p_.edge_count() != h_.edge_count())) {
            return true;
        }
        if (p_.vertex_count() > h_.vertex_count() || p_.edge_count() > h_.edge_count()) return true;
        check_anchor();
        plan();
        current_ = GraphMap::empty_for(p_);
        used_.assign(h_.vertex_count(), 0);
        visit_ = &visit;
        return search(0);
    }

private:
    bool label_ok(Label pl, Label hl) const {
        return opt_.labels == LabelMatch::equal ? pl == hl : poset_.leq(pl, hl);
    }

    void check_anchor() const {
        if (!opt_.anchor) return;
        const GraphMap& a = *opt_.anchor;
        if (a.vertices.size() != p_.vertex_count() || (!a.edges.empty() && a.edges.size() != p_.edge_count())) {
            throw GraphError("anchor does not fit the pattern graph");
        }
        if (!a.is_injective()) throw GraphError("anchor is not injective");
        for (VertexId v = 0; v < p_.vertex_count(); ++v) {
            const VertexId w = a.vertices[v];
            if (w == unmapped) continue;
            if (w >= h_.vertex_count()) throw GraphError("anchor maps outside the host graph");
            if (!label_ok(p_.label(v), h_.label(w))) throw GraphError("anchor violates labels");
        }
        for (EdgeId e = 0; e < p_.edge_count(); ++e) {
            const Edge& ed = p_.edge(e);
            const VertexId a1 = a.vertices[ed.source];
            const VertexId a2 = a.vertices[ed.target];
            if (a1 != unmapped && a2 != unmapped && !h_.find_edge(a1, a2, ed.directed)) {
                throw GraphError("anchor violates incidence");
            }
            if (!a.edges.empty() && a.edges[e] != unmapped) {
                if (a1 == unmapped || a2 == unmapped) throw GraphError("anchor maps an edge without its endpoints");
                if (h_.find_edge(a1, a2, ed.directed) != a.edges[e]) throw GraphError("anchor violates incidence");
            }
        }
    }

    // Connectivity-first ordering so that most candidates come from neighbor lists.
    void plan() {
        const std::size_t n = p_.vertex_count();
        order_.clear();
        order_.reserve(n);
        std::vector<char> placed(n, 0);
        std::vector<int> links(n, 0);
        auto place = [&](VertexId v) {
            placed[v] = 1;
            order_.push_back(v);
            for (EdgeId e : p_.incident(v)) ++links[p_.edge(e).other(v)];
        };
        if (opt_.anchor) {
            for (VertexId v = 0; v < n; ++v) {
                if (opt_.anchor->vertices[v] != unmapped) place(v);
            }
        }
        for (VertexId v : opt_.first) {
            if (!placed[v]) place(v);
        }
        while (order_.size() < n) {
            VertexId best = unmapped;
            for (VertexId v = 0; v < n; ++v) {
                if (placed[v]) continue;
                if (best == unmapped || links[v] > links[best] ||
                    (links[v] == links[best] && p_.degree(v) > p_.degree(best))) {
                    best = v;
                }
            }
            place(best);
        }
        // For each position: edges back to earlier positions, flattened.
        std::vector<std::size_t> pos(n);
        for (std::size_t i = 0; i < n; ++i) pos[order_[i]] = i;
        back_begin_.assign(n + 1, 0);
        back_edges_.clear();
        back_edges_.reserve(p_.edge_count());
        for (std::size_t i = 0; i < n; ++i) {
            const VertexId v = order_[i];
            for (EdgeId e : p_.incident(v)) {
                if (pos[p_.edge(e).other(v)] < i) back_edges_.push_back(e);
            }
            back_begin_[i + 1] = back_edges_.size();
        }
    }

    bool try_vertex(std::size_t i, VertexId pv, VertexId hv) {
        if (used_[hv]) return true;
        if (!label_ok(p_.label(pv), h_.label(hv))) return true;
        if (opt_.bijective ? p_.degree(pv) != h_.degree(hv) : p_.degree(pv) > h_.degree(hv)) return true;
        if (opt_.vertex_filter && !opt_.vertex_filter(pv, hv)) return true;
        for (EdgeId e : back(i)) {
            const Edge& ed = p_.edge(e);
            const VertexId a = ed.source == pv ? hv : current_.vertices[ed.source];
            const VertexId b = ed.target == pv ? hv : current_.vertices[ed.target];
            const auto he = h_.find_edge(a, b, ed.directed);
            if (!he || !label_ok(ed.label, h_.edge(*he).label)) return true;
            if (opt_.edge_filter && !opt_.edge_filter(e, *he)) return true;
            if (opt_.anchor && !opt_.anchor->edges.empty() && opt_.anchor->edges[e] != unmapped &&
                opt_.anchor->edges[e] != *he) {
                return true;
            }
        }
        for (EdgeId e : back(i)) {
            const Edge& ed = p_.edge(e);
            const VertexId a = ed.source == pv ? hv : current_.vertices[ed.source];
            const VertexId b = ed.target == pv ? hv : current_.vertices[ed.target];
            current_.edges[e] = *h_.find_edge(a, b, ed.directed);
        }
        current_.vertices[pv] = hv;
        used_[hv] = 1;
        const bool go_on = search(i + 1);
        used_[hv] = 0;
        current_.vertices[pv] = unmapped;
        for (EdgeId e : back(i)) current_.edges[e] = unmapped;
        return go_on;
    }

    bool search(std::size_t i) {
        if (i == order_.size()) return (*visit_)(current_);
        const VertexId pv = order_[i];
        if (opt_.anchor && opt_.anchor->vertices[pv] != unmapped) {
            return try_vertex(i, pv, opt_.anchor->vertices[pv]);
        }
        if (!back(i).empty()) {
            // Candidates: neighbors of the image of one already-mapped neighbor.
            const Edge& ed = p_.edge(back(i).front());
            const VertexId pu = ed.other(pv);
            const VertexId hu = current_.vertices[pu];
            for (EdgeId he : h_.incident(hu)) {
                const Edge& hed = h_.edge(he);
                if (hed.directed != ed.directed) continue;
                if (ed.directed && ((ed.source == pu) != (hed.source == hu))) continue;
                if (!try_vertex(i, pv, hed.other(hu))) return false;
            }
            return true;
        }
        for (VertexId hv = 0; hv < h_.vertex_count(); ++hv) {
            if (!try_vertex(i, pv, hv)) return false;
        }
        return true;
    }

    const Graph& p_;
    const Graph& h_;
    const LabelPoset& poset_;
    const MatchOptions& opt_;
    std::span<const EdgeId> back(std::size_t i) const {
        return {back_edges_.data() + back_begin_[i], back_begin_[i + 1] - back_begin_[i]};
    }

    std::vector<VertexId> order_;
    std::vector<EdgeId> back_edges_;
    std::vector<std::size_t> back_begin_;
    GraphMap current_;
    std::vector<char> used_;
    const std::function<bool(const Morphism&)>* visit_ = nullptr;
};

} // namespace

bool for_each_monomorphism(const Graph& pattern, const Graph& host, const LabelPoset& poset,
                           const MatchOptions& options, const std::function<bool(const Morphism&)>& visit) {
    Matcher m(pattern, host, poset, options);
    return m.run(visit);
}

std::vector<Morphism> enumerate_monomorphisms(const Graph& pattern, const Graph& host, const LabelPoset& poset,
                                              const GraphMap* anchor) {
    std::vector<Morphism> out;
    MatchOptions opt;
    opt.anchor = anchor;
    for_each_monomorphism(pattern, host, poset, opt, [&](const Morphism& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

std::optional<Morphism> is_isomorphic(const Graph& g, const Graph& h, const LabelPoset& poset,
                                      const GraphMap* anchor) {
    std::optional<Morphism> found;
    MatchOptions opt;
    opt.labels = LabelMatch::equal;
    opt.bijective = true;
    opt.anchor = anchor;
    for_each_monomorphism(g, h, poset, opt, [&](const Morphism& m) {
        found = m;
        return false;
    });
    return found;
}

std::vector<Morphism> automorphisms(const Graph& g, const LabelPoset& poset) {
    std::vector<Morphism> out;
    MatchOptions opt;
    opt.labels = LabelMatch::equal;
    opt.bijective = true;
    for_each_monomorphism(g, g, poset, opt, [&](const Morphism& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

} // namespace ruleinfer
