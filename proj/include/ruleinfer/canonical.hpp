#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ruleinfer/graph.hpp"

namespace ruleinfer {

/// Byte string identifying an isomorphism class. Only codes produced by the
/// same kind of encoding (graph, rule, transition) are comparable.
using CanonicalCode = std::string;

/// Vertex-colored graph with colored arcs; the common target every structure
/// (graphs, rules, transitions) is encoded into before canonization.
/// An undirected edge is two arcs with the same token.
struct ColoredGraph {
    std::vector<std::uint64_t> colors;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> arcs;

    std::uint32_t add_vertex(std::uint64_t color);
    void add_arc(std::uint32_t from, std::uint32_t to, std::uint64_t token);
    void add_edge(std::uint32_t u, std::uint32_t v, std::uint64_t token) {
        add_arc(u, v, token);
        add_arc(v, u, token);
    }
    [[nodiscard]] std::size_t size() const noexcept { return colors.size(); }
};

struct CanonicalForm {
    CanonicalCode code;
    /// order[i] is the vertex placed at canonical position i.
    std::vector<std::uint32_t> order;
    /// Automorphism generators discovered during the search (vertex permutations).
    std::vector<std::vector<std::uint32_t>> generators;
};

/// Canonical labeling by color refinement and individualization, with
/// automorphism pruning. Isomorphic inputs get byte-equal codes.
[[nodiscard]] CanonicalForm canonical_form(const ColoredGraph& g);

/// Edge token for a graph edge as seen from `from`.
[[nodiscard]] std::uint64_t edge_token(const Edge& e, VertexId from, std::uint32_t salt = 0);

/// Structural encoding of a plain labeled graph.
[[nodiscard]] ColoredGraph encode(const Graph& g);

[[nodiscard]] CanonicalCode canonical_code(const Graph& g);

/// Printable form of a code (lowercase hex), used in files and logs.
[[nodiscard]] std::string to_hex(const CanonicalCode& code);

} // namespace ruleinfer
