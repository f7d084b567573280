#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ruleinfer/graph.hpp"
#include "ruleinfer/labels.hpp"

namespace ruleinfer {

/// A (possibly partial) map between the elements of two graphs.
/// Unmapped entries hold `unmapped`.
struct GraphMap {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;

    static GraphMap empty_for(const Graph& source);
    static GraphMap identity(const Graph& g);

    [[nodiscard]] bool is_total() const noexcept;
    [[nodiscard]] bool is_injective() const;
    [[nodiscard]] bool maps_vertex(VertexId v) const { return vertices.at(v) != unmapped; }
    [[nodiscard]] bool maps_edge(EdgeId e) const { return edges.at(e) != unmapped; }

    friend bool operator==(const GraphMap&, const GraphMap&) = default;
};

using Morphism = GraphMap;

/// Composition `second ∘ first` (first: A ⇀ B, second: B ⇀ C).
[[nodiscard]] GraphMap compose(const GraphMap& first, const GraphMap& second);

/// Inverse of an injective map; `target` sizes the result.
[[nodiscard]] GraphMap invert(const GraphMap& map, const Graph& target);

enum class LabelMatch { respect_order, equal };

struct MatchOptions {
    LabelMatch labels = LabelMatch::respect_order;
    /// Partial correspondence every result must extend.
    const GraphMap* anchor = nullptr;
    /// Restrict vertex (edge) candidates; both receive pattern and host ids.
    std::function<bool(VertexId, VertexId)> vertex_filter;
    std::function<bool(EdgeId, EdgeId)> edge_filter;
    /// Require a bijection (with equal labels this is isomorphism search).
    bool bijective = false;
    /// Pattern vertices to place first (after anchored ones), e.g. the most
    /// constrained by the filters. Only affects search order.
    std::vector<VertexId> first;
};

/// Checks incidence, injectivity and label order of a map. For total maps the
/// edge-preservation condition requires every edge to be mapped.
[[nodiscard]] bool is_monomorphism(const GraphMap& map, const Graph& source, const Graph& target,
                                   const LabelPoset& poset, bool total = true);

/// Calls `visit` for each injective, incidence- and label-respecting total map
/// pattern -> host extending the anchor. Enumeration order is deterministic.
/// `visit` returns false to stop; the function returns false iff stopped.
/// Throws GraphError when the anchor itself is inconsistent.
bool for_each_monomorphism(const Graph& pattern, const Graph& host, const LabelPoset& poset,
                           const MatchOptions& options, const std::function<bool(const Morphism&)>& visit);

[[nodiscard]] std::vector<Morphism> enumerate_monomorphisms(const Graph& pattern, const Graph& host,
                                                            const LabelPoset& poset,
                                                            const GraphMap* anchor = nullptr);

/// An isomorphism g -> h (labels equal in both directions), if any.
[[nodiscard]] std::optional<Morphism> is_isomorphic(const Graph& g, const Graph& h, const LabelPoset& poset,
                                                    const GraphMap* anchor = nullptr);

[[nodiscard]] std::vector<Morphism> automorphisms(const Graph& g, const LabelPoset& poset);

} // namespace ruleinfer
