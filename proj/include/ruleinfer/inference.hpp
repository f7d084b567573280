#pragma once

#include <boost/dynamic_bitset.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ruleinfer/transition.hpp"

namespace ruleinfer {

class InferenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Where common-subrule search may weaken unchanged labels to their meet.
enum class EpsilonPolicy { off, vertices, all };

struct InferenceConfig {
    EpsilonPolicy epsilon = EpsilonPolicy::off;
    /// Grow shared context only through shared edges (default) or freely.
    bool connected = true;
    /// Also seed the pool with the minimal subrule of every transition group.
    bool seed_minimal = true;
    /// Search-node budget of a single common_subrules call.
    std::size_t max_search_nodes = 5'000'000;
    std::size_t max_candidates = 500'000;
    /// Combine candidates that already yield spurious transitions. Their
    /// subrules are never exact, so exact-only searches can switch this off.
    bool expand_spurious = true;
    /// Rounds of combination: 1 stops at common subrules of two maximum rules.
    std::size_t max_depth = SIZE_MAX;
    /// Called with (candidates so far, queue length) now and then.
    std::function<void(std::size_t, std::size_t)> progress;
};

using Coverage = boost::dynamic_bitset<>;

struct CandidateRule {
    Rule rule;
    CanonicalCode code;
    Coverage coverage;
    /// Normalized codes of spurious transitions; complete only if `spurious_complete`.
    std::vector<CanonicalCode> spurious;
    bool spurious_complete = false;
    /// Transitions whose maximum rules this candidate was derived from.
    std::vector<std::size_t> provenance;
    [[nodiscard]] std::size_t spurious_count() const noexcept { return spurious.size(); }
};

struct CandidatePool {
    std::vector<CandidateRule> candidates;
    std::size_t universe = 0;
    /// Number of distinct rules met during the closure, before class pruning.
    std::size_t explored = 0;
};

/// c(p) over all transitions of the system.
[[nodiscard]] Coverage coverage(const Rule& p, const SystemIndex& index);

/// Maximal common subrules of p1 and p2 sharing an aligned minimal core.
[[nodiscard]] std::vector<Rule> common_subrules(const Rule& p1, const Rule& p2, const LabelPoset& poset,
                                                const InferenceConfig& config);

/// Closure of the maximum rules under common_subrules, pruned to the maximal
/// rules of every coverage class. Spurious sets are not filled in.
[[nodiscard]] CandidatePool build_candidate_pool(const SystemIndex& index, const InferenceConfig& config);

/// Fills in spurious sets. With `first_only` each search stops at one witness,
/// which is enough to decide exactness.
void compute_spurious(CandidatePool& pool, const SystemIndex& index, bool first_only);

/// Candidates without spurious transitions (requires compute_spurious).
[[nodiscard]] CandidatePool exact_filter(const CandidatePool& pool);

/// Text dump: one line per candidate with coverage bits and spurious count.
[[nodiscard]] std::string format_pool(const CandidatePool& pool);

/// Subrule Hasse diagram of the pool in DOT syntax.
[[nodiscard]] std::string hasse_dot(const CandidatePool& pool, const LabelPoset& poset);

} // namespace ruleinfer
