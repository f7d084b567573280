#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>

#include "ruleinfer/cover.hpp"

namespace ruleinfer {

enum class SolverKind { bnb, greedy, export_lp };

struct PipelineConfig {
    CoverMode mode = CoverMode::exact;
    Rational rho{1};
    Rational spurious_weight{1};
    InferenceConfig inference;
    SolverKind solver = SolverKind::bnb;
    std::optional<std::chrono::duration<double>> timeout;
    std::function<void(const std::string&)> log;
};

struct StageTimes {
    double pool = 0, spurious = 0, solve = 0, verify = 0;
};

enum class PipelineStatus {
    solved,   ///< rules chosen and verified against the system
    rejected, ///< rules chosen but verification disagreed
    no_exact, ///< exact mode and some maximum rule is already spurious
    exported  ///< LP written, nothing solved
};

struct PipelineResult {
    PipelineStatus status = PipelineStatus::solved;
    CandidatePool pool;
    std::optional<CoverProblem> problem;
    std::optional<Solution> solution;
    std::vector<Rule> rules;
    std::vector<CanonicalCode> rule_codes;
    std::optional<GenerationReport> report;
    /// Certificate for no_exact: a transition and a spurious transition its maximum rule yields.
    std::vector<PathologyPair> pathology;
    std::string lp;
    StageTimes times;
};

/// Maximum rules, candidate pool, cover problem, solution, then an independent
/// re-check of the chosen rules against the whole system.
[[nodiscard]] PipelineResult run_pipeline(const TransitionSystem& system, const PipelineConfig& config);

struct ComplexityResult {
    std::size_t pool_size = 0;
    std::size_t generating = 0;
    bool generating_optimal = false;
    std::optional<std::size_t> exact; ///< K(S); empty when no exact set exists
    bool exact_optimal = false;
    std::vector<PathologyPair> pathology;
    std::vector<Rule> exact_rules;
};

/// Minimal generating and minimal exact rule-set sizes over one candidate pool.
[[nodiscard]] ComplexityResult complexity(const TransitionSystem& system, const PipelineConfig& config);

[[nodiscard]] std::string to_string(PipelineStatus s);
[[nodiscard]] std::string to_string(CoverMode m);
[[nodiscard]] std::string to_string(EpsilonPolicy e);

} // namespace ruleinfer
