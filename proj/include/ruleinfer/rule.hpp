#pragma once

#include <stdexcept>

#include "ruleinfer/canonical.hpp"
#include "ruleinfer/graph.hpp"
#include "ruleinfer/labels.hpp"
#include "ruleinfer/morphism.hpp"

namespace ruleinfer {

class RuleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A span L <-l- K -r-> R with injective legs.
struct Rule {
    Graph left;
    Graph context;
    Graph right;
    GraphMap l; ///< K -> L
    GraphMap r; ///< K -> R
};

/// Throws RuleError unless both legs are total label-respecting monomorphisms.
void validate_rule(const Rule& p, const LabelPoset& poset);

/// f_p = r ∘ l⁻¹ as a partial map L ⇀ R.
[[nodiscard]] GraphMap element_map(const Rule& p);

/// Span (L ← dom f → R) for an injective partial map f: L ⇀ R. Context labels
/// are meets of both sides. Throws RuleError when f is not a partial
/// monomorphism-shaped map (incidence, injectivity, mapped edge endpoints).
[[nodiscard]] Rule rule_from_map(const Graph& left, const Graph& right, const GraphMap& f,
                                 const LabelPoset& poset);

[[nodiscard]] Rule identity_rule(const Graph& g);

/// Encoding of the rule as one colored graph: the union of L and R glued along
/// the element map. Preserved vertices keep both labels, deleted and created
/// ones are tagged apart. `vertex_origin[i]` is (side, index) with side 0 for L
/// (preserved or deleted) and 1 for created R vertices.
struct RuleEncoding {
    ColoredGraph graph;
    std::vector<UnionPart> vertex_origin;
};
[[nodiscard]] RuleEncoding encode_rule(const Rule& p);

[[nodiscard]] CanonicalCode rule_code(const Rule& p);

/// Canonical representative: elements renumbered in canonical order, context
/// labels normalized to meets.
[[nodiscard]] Rule canonical_rule(const Rule& p, const LabelPoset& poset);

[[nodiscard]] bool rules_isomorphic(const Rule& a, const Rule& b);

/// Counts of deleted / created vertices and edges, and relabeled elements.
struct RuleSummary {
    std::size_t deleted_vertices = 0, created_vertices = 0;
    std::size_t deleted_edges = 0, created_edges = 0;
    std::size_t relabeled_vertices = 0, relabeled_edges = 0;
    std::size_t preserved_vertices = 0, preserved_edges = 0;
};
[[nodiscard]] RuleSummary summarize(const Rule& p);

} // namespace ruleinfer
