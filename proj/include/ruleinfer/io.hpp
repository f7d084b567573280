#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

#include "ruleinfer/rule.hpp"
#include "ruleinfer/transition.hpp"

namespace ruleinfer {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

// Poset: {"bottom", "top", "atoms": [..], "covers": [[a, b], ..]} with a < b.
[[nodiscard]] Json poset_to_json(const LabelPoset& poset);
[[nodiscard]] LabelPoset poset_from_json(const Json& j);

// Graph: {"vertices": [{"id", "label"}], "edges": [{"source", "target", "label", "directed"}]}.
// Vertex ids may be arbitrary distinct integers; they are renumbered densely in
// file order. Edges are numbered in file order.
[[nodiscard]] Json graph_to_json(const Graph& g, const LabelPoset& poset);
[[nodiscard]] Graph graph_from_json(const Json& j, const LabelPoset& poset);

// Partial map: {"vertex_map": [[from, to]], "edge_map": [[from, to]]}; omitted
// elements are unmapped.
[[nodiscard]] Json map_to_json(const GraphMap& f);
[[nodiscard]] GraphMap map_from_json(const Json& j, const Graph& source);

// Rule: {"left", "context", "right", "l", "r"}, legs given as maps.
[[nodiscard]] Json rule_to_json(const Rule& p, const LabelPoset& poset);
[[nodiscard]] Rule rule_from_json(const Json& j, const LabelPoset& poset);

// Transition system: {"poset", "inputs": [graph], "transitions": [{"source",
// "target", "vertex_map", "edge_map", "name"?}]}.
[[nodiscard]] Json system_to_json(const TransitionSystem& system);
[[nodiscard]] TransitionSystem system_from_json(const Json& j);

/// Rule in the GML dialect used by graph-grammar tools: shared node ids,
/// with left/right holding what changes and context what stays.
[[nodiscard]] std::string rule_to_gml(const Rule& p, const LabelPoset& poset, const std::string& id = {});

[[nodiscard]] Json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

} // namespace ruleinfer
