#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ruleinfer/labels.hpp"

namespace ruleinfer {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::uint32_t unmapped = std::numeric_limits<std::uint32_t>::max();

struct Edge {
    VertexId source = 0;
    VertexId target = 0;
    Label label{};
    bool directed = false;

    /// The endpoint different from `v` (for undirected edges either end works).
    [[nodiscard]] VertexId other(VertexId v) const noexcept { return v == source ? target : source; }
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite simple labeled graph. Vertices and edges are dense indices.
///
/// Every edge is either directed or undirected. Self-loops are rejected, as are
/// two undirected edges on the same vertex pair or two directed edges with the
/// same ordered endpoints. A directed and an undirected edge may share a pair.
class Graph {
public:
    Graph() = default;

    VertexId add_vertex(Label label);
    EdgeId add_edge(VertexId source, VertexId target, Label label, bool directed = false);

    [[nodiscard]] std::size_t vertex_count() const noexcept { return vertex_labels_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] bool empty() const noexcept { return vertex_labels_.empty(); }

    [[nodiscard]] Label label(VertexId v) const { return vertex_labels_.at(v); }
    [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }
    [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
    [[nodiscard]] std::span<const Label> vertex_labels() const noexcept { return vertex_labels_; }
    [[nodiscard]] std::span<const EdgeId> incident(VertexId v) const { return incidence_.at(v); }
    [[nodiscard]] std::size_t degree(VertexId v) const { return incidence_.at(v).size(); }

    /// Edge from u to v of the given kind; undirected lookups ignore order.
    [[nodiscard]] std::optional<EdgeId> find_edge(VertexId u, VertexId v, bool directed) const;

    /// Vertex -> component index, components numbered by smallest vertex.
    [[nodiscard]] std::vector<std::uint32_t> components(std::size_t* count = nullptr) const;

    void set_label(VertexId v, Label l) { vertex_labels_.at(v) = l; }
    void set_edge_label(EdgeId e, Label l) { edges_.at(e).label = l; }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<Label> vertex_labels_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incidence_;
};

/// Provenance of an element of a disjoint union.
struct UnionPart {
    std::uint8_t side = 0; ///< 0 for the first operand, 1 for the second
    std::uint32_t index = 0;
};

struct DisjointUnion {
    Graph graph;
    std::vector<UnionPart> vertex_origin;
    std::vector<UnionPart> edge_origin;
};

/// G ⊕ H: vertices of `h` are shifted past those of `g`.
[[nodiscard]] DisjointUnion disjoint_union(const Graph& g, const Graph& h);

/// Subgraph induced by the kept vertices (plus kept edges among them, when
/// `keep_edge` is supplied). Produces old->new index maps.
struct Subgraph {
    Graph graph;
    std::vector<VertexId> vertex_to_new; ///< unmapped for dropped vertices
    std::vector<EdgeId> edge_to_new;
    std::vector<VertexId> vertex_to_old;
    std::vector<EdgeId> edge_to_old;
};

[[nodiscard]] Subgraph subgraph(const Graph& g, const std::vector<char>& keep_vertex,
                                const std::vector<char>* keep_edge = nullptr);

} // namespace ruleinfer
