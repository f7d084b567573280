#include "ruleinfer/pipeline.hpp"

namespace ruleinfer {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void say(const PipelineConfig& c, const std::string& msg) {
    if (c.log) c.log(msg);
}

} // namespace

std::string to_string(PipelineStatus s) {
    switch (s) {
    case PipelineStatus::solved: return "solved";
    case PipelineStatus::rejected: return "rejected";
    case PipelineStatus::no_exact: return "no-exact";
    case PipelineStatus::exported: return "exported";
    }
    return "?";
}

std::string to_string(CoverMode m) {
    switch (m) {
    case CoverMode::exact: return "exact";
    case CoverMode::lossy: return "lossy";
    case CoverMode::generating: return "generating";
    }
    return "?";
}

std::string to_string(EpsilonPolicy e) {
    switch (e) {
    case EpsilonPolicy::off: return "off";
    case EpsilonPolicy::vertices: return "vertices";
    case EpsilonPolicy::all: return "all";
    }
    return "?";
}

PipelineResult run_pipeline(const TransitionSystem& system, const PipelineConfig& config) {
    PipelineResult res;
    const SystemIndex index(system);

    InferenceConfig inference = config.inference;
    if (config.mode == CoverMode::exact) inference.expand_spurious = false;
    auto t0 = Clock::now();
    res.pool = build_candidate_pool(index, inference);
    res.times.pool = since(t0);
    say(config, "candidate pool: " + std::to_string(res.pool.candidates.size()) + " rules");

    t0 = Clock::now();
    compute_spurious(res.pool, index, config.mode != CoverMode::lossy);
    res.times.spurious = since(t0);

    if (config.mode == CoverMode::exact) {
        // An exact set exists iff every maximum rule is spurious-free; the
        // maximum rules are always in the pool.
        try {
            res.problem = build_cover_problem(res.pool, CoverMode::exact);
        } catch (const CoverError&) {
            res.status = PipelineStatus::no_exact;
            res.pathology = detect_pathology(system, 1);
            return res;
        }
    } else {
        res.problem = build_cover_problem(res.pool, config.mode, config.rho, config.spurious_weight);
    }
    say(config, "cover problem: " + std::to_string(res.problem->sets.size()) + " sets over " +
                    std::to_string(res.problem->universe) + " transitions");

    if (config.solver == SolverKind::export_lp) {
        res.lp = export_lp(*res.problem);
        res.status = PipelineStatus::exported;
        return res;
    }
    t0 = Clock::now();
    res.solution = config.solver == SolverKind::greedy ? solve_greedy(*res.problem)
                                                        : solve_exact(*res.problem, SolveOptions{config.timeout});
    res.times.solve = since(t0);
    for (std::size_t s : res.solution->chosen) {
        const CandidateRule& c = res.pool.candidates[res.problem->origin[s]];
        res.rules.push_back(c.rule);
        res.rule_codes.push_back(c.code);
    }

    t0 = Clock::now();
    res.report = check(res.rules, system);
    res.times.verify = since(t0);
    bool ok = res.report->generating();
    if (config.mode == CoverMode::exact) ok = ok && res.report->exact();
    if (config.mode == CoverMode::lossy) ok = ok && res.report->spurious.size() == res.solution->spurious_incurred.size();
    res.status = ok ? PipelineStatus::solved : PipelineStatus::rejected;
    return res;
}

ComplexityResult complexity(const TransitionSystem& system, const PipelineConfig& config) {
    ComplexityResult out;
    const SystemIndex index(system);
    InferenceConfig inference = config.inference;
    inference.expand_spurious = false;
    CandidatePool pool = build_candidate_pool(index, inference);
    out.pool_size = pool.candidates.size();
    compute_spurious(pool, index, true);
    const SolveOptions opts{config.timeout};
    const Solution g = solve_exact(build_cover_problem(pool, CoverMode::generating), opts);
    out.generating = g.chosen.size();
    out.generating_optimal = g.optimal;
    try {
        const CoverProblem p = build_cover_problem(pool, CoverMode::exact);
        const Solution e = solve_exact(p, opts);
        out.exact = e.chosen.size();
        out.exact_optimal = e.optimal;
        for (std::size_t s : e.chosen) out.exact_rules.push_back(pool.candidates[p.origin[s]].rule);
    } catch (const CoverError&) {
        out.pathology = detect_pathology(system, 1);
    }
    return out;
}

} // namespace ruleinfer
