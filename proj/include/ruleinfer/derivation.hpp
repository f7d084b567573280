#pragma once

#include <optional>
#include <vector>

#include "ruleinfer/rule.hpp"

namespace ruleinfer {

class DerivationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An element-mapped pair (A, f, B), the shape shared by rules (L, f_p, R)
/// and transitions (G, f, H), with the bookkeeping the generation test needs.
/// Holds pointers into the graphs it was built from.
struct SpanInfo {
    const Graph* left = nullptr;
    const Graph* right = nullptr;
    GraphMap map;     ///< left ⇀ right
    GraphMap inverse; ///< right ⇀ left
    std::size_t deleted_vertices = 0, deleted_edges = 0;
    std::size_t created_vertices = 0, created_edges = 0;

    static SpanInfo of(const Graph& left, const GraphMap& map, const Graph& right);
    static SpanInfo of(const Rule& p) { return of(p.left, element_map(p), p.right); }
};

/// A direct derivation G ⇒ H. The interface D and its legs are the context
/// and legs of `induced_rule`.
struct Derivation {
    GraphMap match;   ///< L -> G
    Graph output;     ///< H
    GraphMap track;   ///< G ⇀ H
    GraphMap comatch; ///< R -> H
};

enum class ApplyStatus { ok, dangling, not_simple };

/// Application along an injective match (assumed valid). Preserved elements
/// whose label differs between L and R take the R label; all other preserved
/// elements keep their host label.
[[nodiscard]] ApplyStatus try_apply(const SpanInfo& rule, const Graph& g, const GraphMap& match, Derivation& out);

/// Validating form. Throws DerivationError for invalid matches, dangling
/// violations and results that would not be simple graphs.
[[nodiscard]] Derivation apply(const Rule& p, const Graph& g, const GraphMap& match, const LabelPoset& poset);

/// One derivation per valid match, in match enumeration order. Throws
/// DerivationError when more than `limit` derivations exist.
[[nodiscard]] std::vector<Derivation> enumerate_derivations(const Rule& p, const Graph& g, const LabelPoset& poset,
                                                           std::size_t limit = 1'000'000);

/// p(δ) = (G ← D → H).
[[nodiscard]] Rule induced_rule(const Graph& g, const Derivation& d, const LabelPoset& poset);

struct GenerationWitness {
    GraphMap match;      ///< L -> A
    GraphMap target_iso; ///< H_δ -> B, commuting with the element maps
    Derivation derivation;
};

/// Searches a derivation of `rule` on target.left whose element map is
/// equivalent to target.map. Only matches sending deleted elements to deleted
/// ones and preserved to preserved are tried; this loses nothing since any
/// other match yields a different domain.
[[nodiscard]] std::optional<GenerationWitness> find_generation(const SpanInfo& rule, const SpanInfo& target,
                                                               const LabelPoset& poset);

/// p1 ⊆ p2: p1 applied inside L2 reproduces f_{p2}.
[[nodiscard]] std::optional<GenerationWitness> is_subrule(const Rule& p1, const Rule& p2, const LabelPoset& poset);

/// The minimal subrule together with its embedding into p.
struct Core {
    Rule rule;
    GraphMap into_left;  ///< L_core -> L_p
    GraphMap into_right; ///< R_core -> R_p
};

/// Keeps the deleted, created and relabeled elements plus the endpoints of
/// changed edges; endpoints that are otherwise unchanged get the bottom label.
[[nodiscard]] Core minimal_core(const Rule& p, const LabelPoset& poset);
[[nodiscard]] Rule minimal_subrule(const Rule& p, const LabelPoset& poset);

} // namespace ruleinfer
