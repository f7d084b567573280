#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ruleinfer/derivation.hpp"

namespace ruleinfer {

/// t = (G, f, H).
struct Transition {
    Graph source;
    GraphMap map;
    Graph target;
};

/// A transition inside a system: its source is an input graph by index.
struct SystemTransition {
    std::size_t source = 0;
    GraphMap map;
    Graph target;
    std::string name;
    /// Positions (in load order) of equivalent transitions merged into this one.
    std::vector<std::size_t> merged;
};

class TransitionSystem {
public:
    explicit TransitionSystem(LabelPoset poset) : poset_(std::move(poset)) {}

    std::size_t add_input(Graph g);
    /// Adds t unless an equivalent transition is present; returns its index.
    /// Throws RuleError for malformed maps.
    std::size_t add_transition(std::size_t source, GraphMap map, Graph target, std::string name = {});

    [[nodiscard]] const LabelPoset& poset() const noexcept { return poset_; }
    [[nodiscard]] const std::vector<Graph>& inputs() const noexcept { return inputs_; }
    [[nodiscard]] const std::vector<SystemTransition>& transitions() const noexcept { return transitions_; }
    [[nodiscard]] Transition transition(std::size_t i) const;
    [[nodiscard]] std::size_t loaded_count() const noexcept { return loaded_; }

private:
    LabelPoset poset_;
    std::vector<Graph> inputs_;
    std::vector<SystemTransition> transitions_;
    std::unordered_map<CanonicalCode, std::size_t> by_code_;
    std::size_t loaded_ = 0;
};

/// Canonical code of (G, f, H); equal iff the transitions are equivalent.
[[nodiscard]] CanonicalCode transition_code(const Graph& g, const GraphMap& f, const Graph& h);
[[nodiscard]] inline CanonicalCode transition_code(const Transition& t) {
    return transition_code(t.source, t.map, t.target);
}

[[nodiscard]] bool transitions_equivalent(const Transition& a, const Transition& b);

/// Drops the connected components of G that the transition leaves untouched
/// (all elements preserved with equal labels, nothing attached in H), together
/// with their images. Spurious-transition bookkeeping compares normalized forms,
/// so a transformation is identified independently of idle context molecules.
[[nodiscard]] Transition normalize(const Graph& g, const GraphMap& f, const Graph& h);
[[nodiscard]] CanonicalCode normalized_code(const Graph& g, const GraphMap& f, const Graph& h);

/// p(t) = (G ← dom f → H), context labels are meets.
[[nodiscard]] Rule maximum_rule(const Graph& g, const GraphMap& f, const Graph& h, const LabelPoset& poset);
[[nodiscard]] inline Rule maximum_rule(const Transition& t, const LabelPoset& poset) {
    return maximum_rule(t.source, t.map, t.target, poset);
}

/// p ⊨ t, via filtered matching and an anchored isomorphism test.
[[nodiscard]] bool generates(const Rule& p, const Transition& t, const LabelPoset& poset);
/// Same relation by exhaustive match enumeration and canonical comparison.
/// Kept as an independent reference implementation.
[[nodiscard]] bool generates_exhaustive(const Rule& p, const Transition& t, const LabelPoset& poset);

/// Precomputed per-system lookups shared by coverage and spurious searches.
class SystemIndex {
public:
    explicit SystemIndex(const TransitionSystem& system);

    [[nodiscard]] const TransitionSystem& system() const noexcept { return *system_; }
    [[nodiscard]] const SpanInfo& span(std::size_t t) const { return spans_.at(t); }
    [[nodiscard]] const CanonicalCode& code(std::size_t t) const { return codes_.at(t); }
    [[nodiscard]] const CanonicalCode& normal_code(std::size_t t) const { return normal_codes_.at(t); }
    /// True when some input transition has this normalized code.
    [[nodiscard]] bool is_input_normal(const CanonicalCode& c) const { return normal_set_.count(c) != 0; }

private:
    const TransitionSystem* system_;
    std::vector<SpanInfo> spans_;
    std::vector<CanonicalCode> codes_;
    std::vector<CanonicalCode> normal_codes_;
    std::unordered_map<CanonicalCode, std::size_t> normal_set_;
};

struct GeneratedTransition {
    std::size_t source = 0;
    Transition transition;
    CanonicalCode normal_code;
};

/// Visits every derivation of p on every input graph. Throws DerivationError
/// when a single (rule, input) pair exceeds `limit` derivations.
void for_each_derivation(const Rule& p, const TransitionSystem& system,
                         const std::function<bool(std::size_t source, const Derivation&)>& visit,
                         std::size_t limit = 1'000'000);

/// R(U) for a rule set, deduplicated by normalized code, ordered by code.
[[nodiscard]] std::vector<GeneratedTransition> generated_transitions(const std::vector<Rule>& rules,
                                                                     const TransitionSystem& system,
                                                                     std::size_t limit = 1'000'000);

/// Normalized codes of the spurious transitions of p, sorted. With
/// `stop_at_first` the search ends after the first one.
[[nodiscard]] std::vector<CanonicalCode> spurious_codes(const Rule& p, const SystemIndex& index,
                                                        bool stop_at_first = false,
                                                        std::size_t limit = 1'000'000);

struct GenerationReport {
    std::vector<std::size_t> missing; ///< input transitions nobody generates
    std::vector<GeneratedTransition> spurious;
    std::vector<CanonicalCode> generated; ///< R(U), normalized codes, sorted
    [[nodiscard]] bool generating() const noexcept { return missing.empty(); }
    [[nodiscard]] bool exact() const noexcept { return missing.empty() && spurious.empty(); }
};

[[nodiscard]] GenerationReport check(const std::vector<Rule>& rules, const TransitionSystem& system);

struct PathologyPair {
    std::size_t transition = 0;
    GeneratedTransition spurious;
};

/// Transitions whose maximum rule already yields a non-input transition: each
/// pair certifies that no exact generating rule set exists.
[[nodiscard]] std::vector<PathologyPair> detect_pathology(const TransitionSystem& system,
                                                          std::size_t max_pairs = SIZE_MAX);

/// All ⊕-combinations of at most `max_parts` input graphs (with repetition),
/// deduplicated up to isomorphism, in a deterministic order.
[[nodiscard]] std::vector<Graph> combine_inputs(const std::vector<Graph>& parts, std::size_t max_parts);

} // namespace ruleinfer
