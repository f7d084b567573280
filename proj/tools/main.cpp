// ruleinfer command line: infer rule sets from transition systems and inspect them.
#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ruleinfer/derivation.hpp"
#include "ruleinfer/generators.hpp"
#include "ruleinfer/io.hpp"
#include "ruleinfer/pipeline.hpp"

namespace fs = std::filesystem;
using namespace ruleinfer;

namespace {

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

std::string timestamp(const char* fmt) {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::strftime(buf, sizeof buf, fmt, &tm);
    return buf;
}

struct Options {
    // solver and inference
    std::string mode = "exact";
    std::string rho = "1";
    std::string spurious_weight = "1";
    double timeout = 0;
    std::string solver = "bnb";
    std::string epsilon = "off";
    bool unconnected = false;
    std::size_t max_depth = 0;
    std::size_t max_candidates = 500'000;
    std::size_t max_search_nodes = 5'000'000;
    // run directory
    std::string run_dir;
    bool quiet = false;
    // generators
    std::string encoding = "marked";
    std::size_t max_len = 5;
    std::string player = "O";
    std::string reach = "any";
    // subcommand arguments
    std::string system, rules, rule, graph, poset;
    bool exact = false, hasse = false;
};

/// Output directory plus the manifest describing what went in and came out.
class Run {
public:
    Run(const std::string& command, const Options& o, std::vector<std::string> argv) : command_(command) {
        dir_ = o.run_dir.empty() ? fs::path("runs") / (command + "-" + timestamp("%Y%m%d-%H%M%S")) : fs::path(o.run_dir);
        fs::create_directories(dir_);
        manifest_ = Json{{"tool", "ruleinfer"},
                         {"version", RULEINFER_VERSION},
                         {"command", command},
                         {"argv", std::move(argv)},
                         {"started", timestamp("%Y-%m-%dT%H:%M:%SZ")},
                         {"inputs", Json::array()},
                         {"outputs", Json::array()}};
        manifest_["config"] = Json{{"mode", o.mode},        {"rho", o.rho},
                                   {"spurious-weight", o.spurious_weight}, {"timeout", o.timeout},
                                   {"solver", o.solver},    {"epsilon", o.epsilon},
                                   {"unconnected", o.unconnected}, {"max-depth", o.max_depth},
                                   {"max-candidates", o.max_candidates}, {"max-search-nodes", o.max_search_nodes}};
    }

    void input(const std::string& path) {
        manifest_["inputs"].push_back({{"path", path}, {"sha256", sha256_file(path)}, {"bytes", fs::file_size(path)}});
    }
    fs::path write(const std::string& name, const std::string& text) {
        const fs::path p = dir_ / name;
        fs::create_directories(p.parent_path());
        write_text(p.string(), text);
        manifest_["outputs"].push_back({{"path", name}, {"sha256", sha256_file(p)}});
        return p;
    }
    fs::path write(const std::string& name, const Json& j) { return write(name, j.dump(2) + "\n"); }
    void note(const std::string& key, Json value) { manifest_[key] = std::move(value); }
    int finish(int code) {
        manifest_["finished"] = timestamp("%Y-%m-%dT%H:%M:%SZ");
        manifest_["exit_code"] = code;
        write_text((dir_ / "manifest.json").string(), manifest_.dump(2) + "\n");
        return code;
    }
    const fs::path& dir() const { return dir_; }

private:
    std::string command_;
    fs::path dir_;
    Json manifest_;
};

CoverMode parse_mode(const std::string& s) {
    if (s == "exact") return CoverMode::exact;
    if (s == "lossy") return CoverMode::lossy;
    throw CLI::ValidationError("--mode", "expected exact or lossy");
}

PipelineConfig pipeline_config(const Options& o) {
    PipelineConfig c;
    c.mode = parse_mode(o.mode);
    c.rho = Rational::parse(o.rho);
    c.spurious_weight = Rational::parse(o.spurious_weight);
    c.solver = o.solver == "greedy" ? SolverKind::greedy : o.solver == "export" ? SolverKind::export_lp : SolverKind::bnb;
    if (o.timeout > 0) c.timeout = std::chrono::duration<double>(o.timeout);
    c.inference.epsilon = o.epsilon == "vertices" ? EpsilonPolicy::vertices
                          : o.epsilon == "all"    ? EpsilonPolicy::all
                                                  : EpsilonPolicy::off;
    c.inference.connected = !o.unconnected;
    if (o.max_depth > 0) c.inference.max_depth = o.max_depth;
    c.inference.max_candidates = o.max_candidates;
    c.inference.max_search_nodes = o.max_search_nodes;
    if (!o.quiet) c.log = [](const std::string& s) { std::cerr << s << "\n"; };
    return c;
}

std::vector<Rule> load_rules(const std::string& path, const LabelPoset& P) {
    Json j = read_json(path);
    if (j.is_object() && j.contains("rules")) j = j["rules"];
    std::vector<Rule> out;
    if (j.is_array()) {
        for (const Json& r : j) out.push_back(rule_from_json(r, P));
    } else {
        out.push_back(rule_from_json(j, P));
    }
    return out;
}

Json transition_json(const TransitionSystem& sys, std::size_t t) {
    const SystemTransition& st = sys.transitions()[t];
    Json m = map_to_json(st.map);
    return Json{{"index", t}, {"name", st.name}, {"source", st.source}, {"vertex_map", m["vertex_map"]},
                {"edge_map", m["edge_map"]}, {"target", graph_to_json(st.target, sys.poset())}};
}

Json generated_json(const TransitionSystem& sys, const GeneratedTransition& g) {
    Json m = map_to_json(g.transition.map);
    return Json{{"source", g.source}, {"vertex_map", m["vertex_map"]}, {"edge_map", m["edge_map"]},
                {"target", graph_to_json(g.transition.target, sys.poset())}};
}

Json rules_json(const std::vector<Rule>& rules, const LabelPoset& P) {
    Json arr = Json::array();
    for (const Rule& r : rules) arr.push_back(rule_to_json(r, P));
    return arr;
}

std::string rules_gml(const std::vector<Rule>& rules, const LabelPoset& P) {
    std::string out;
    for (std::size_t i = 0; i < rules.size(); ++i) out += rule_to_gml(rules[i], P, "r" + std::to_string(i));
    return out;
}

int cmd_infer(const Options& o, Run& run) {
    run.input(o.system);
    const TransitionSystem sys = system_from_json(read_json(o.system));
    const PipelineConfig cfg = pipeline_config(o);
    const PipelineResult res = run_pipeline(sys, cfg);
    const LabelPoset& P = sys.poset();
    Json summary{{"status", to_string(res.status)},
                 {"mode", o.mode},
                 {"rho", cfg.rho.str()},
                 {"spurious_weight", cfg.spurious_weight.str()},
                 {"epsilon", o.epsilon},
                 {"inputs", sys.inputs().size()},
                 {"transitions", sys.transitions().size()},
                 {"candidates", res.pool.candidates.size()},
                 {"explored", res.pool.explored},
                 {"seconds", {{"pool", res.times.pool}, {"spurious", res.times.spurious}, {"solve", res.times.solve},
                              {"verify", res.times.verify}}}};
    run.write("pool.txt", format_pool(res.pool));
    if (res.status == PipelineStatus::no_exact) {
        Json cert = Json::array();
        for (const auto& pp : res.pathology) {
            cert.push_back({{"transition", transition_json(sys, pp.transition)},
                            {"spurious", generated_json(sys, pp.spurious)}});
        }
        summary["certificate"] = cert;
        run.write("solution.json", summary);
        std::cout << "no exact generating rule set exists";
        if (!res.pathology.empty()) std::cout << ": maximum rule of " << sys.transitions()[res.pathology[0].transition].name
                                              << " yields a spurious transition from input " << res.pathology[0].spurious.source;
        std::cout << "\n";
        return 1;
    }
    if (res.status == PipelineStatus::exported) {
        run.write("problem.lp", res.lp);
        run.write("solution.json", summary);
        std::cout << "LP written to " << (run.dir() / "problem.lp").string() << "\n";
        return 0;
    }
    const Solution& s = *res.solution;
    summary["rules"] = res.rules.size();
    summary["objective"] = s.objective.str();
    summary["optimal"] = s.optimal;
    summary["spurious"] = s.spurious_incurred.size();
    summary["search_nodes"] = s.nodes;
    summary["verified"] = res.status == PipelineStatus::solved;
    Json chosen = Json::array();
    for (std::size_t i = 0; i < s.chosen.size(); ++i) {
        const CandidateRule& c = res.pool.candidates[res.problem->origin[s.chosen[i]]];
        chosen.push_back({{"file", "rules/rule_" + std::to_string(i) + ".json"},
                          {"code", to_hex(c.code)},
                          {"covers", c.coverage.count()},
                          {"spurious", c.spurious.size()}});
        run.write("rules/rule_" + std::to_string(i) + ".json", rule_to_json(res.rules[i], P));
    }
    summary["chosen"] = chosen;
    if (res.report) {
        Json spur = Json::array();
        for (const auto& g : res.report->spurious) spur.push_back(generated_json(sys, g));
        summary["spurious_transitions"] = spur;
    }
    run.write("rules.json", rules_json(res.rules, P));
    run.write("rules.gml", rules_gml(res.rules, P));
    run.write("solution.json", summary);
    std::cout << res.rules.size() << " rules, objective " << s.objective.str() << (s.optimal ? " (optimal)" : " (not proved optimal)")
              << ", " << s.spurious_incurred.size() << " spurious, verification "
              << (res.status == PipelineStatus::solved ? "passed" : "FAILED") << "\n";
    return res.status == PipelineStatus::solved ? 0 : 1;
}

int cmd_check(const Options& o, Run& run) {
    run.input(o.system);
    run.input(o.rules);
    const TransitionSystem sys = system_from_json(read_json(o.system));
    const auto rules = load_rules(o.rules, sys.poset());
    const GenerationReport rep = check(rules, sys);
    Json missing = Json::array(), spur = Json::array();
    for (std::size_t t : rep.missing) missing.push_back(transition_json(sys, t));
    for (const auto& g : rep.spurious) spur.push_back(generated_json(sys, g));
    run.write("check.json", Json{{"rules", rules.size()},
                                 {"generating", rep.generating()},
                                 {"exact", rep.exact()},
                                 {"missing", missing},
                                 {"spurious", spur}});
    std::cout << "generating: " << (rep.generating() ? "yes" : "no") << " (" << rep.missing.size()
              << " missing), exact: " << (rep.exact() ? "yes" : "no") << " (" << rep.spurious.size() << " spurious)\n";
    const bool ok = o.exact ? rep.exact() : rep.generating();
    return ok ? 0 : 1;
}

int cmd_apply(const Options& o, Run& run) {
    if (o.poset.empty() == o.system.empty()) throw CLI::ValidationError("apply", "give exactly one of --poset or --system");
    const std::string& pfile = o.poset.empty() ? o.system : o.poset;
    run.input(pfile);
    run.input(o.rule);
    run.input(o.graph);
    const Json pj = read_json(pfile);
    const LabelPoset P = poset_from_json(o.poset.empty() ? pj.at("poset") : pj);
    const auto rules = load_rules(o.rule, P);
    const Graph g = graph_from_json(read_json(o.graph), P);
    std::size_t n = 0;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        for (const Derivation& d : enumerate_derivations(rules[r], g, P)) {
            Json m = map_to_json(d.track);
            run.write("derivations/d_" + std::to_string(n) + ".json",
                      Json{{"rule", r}, {"match", map_to_json(d.match)}, {"vertex_map", m["vertex_map"]},
                           {"edge_map", m["edge_map"]}, {"target", graph_to_json(d.output, P)}});
            ++n;
        }
    }
    std::cout << n << " derivations\n";
    return 0;
}

int cmd_complexity(const Options& o, Run& run) {
    run.input(o.system);
    const TransitionSystem sys = system_from_json(read_json(o.system));
    const ComplexityResult c = complexity(sys, pipeline_config(o));
    Json j{{"candidates", c.pool_size}, {"generating", c.generating}, {"generating_optimal", c.generating_optimal}};
    if (c.exact) {
        j["exact"] = *c.exact;
        j["exact_optimal"] = c.exact_optimal;
        run.write("exact_rules.json", rules_json(c.exact_rules, sys.poset()));
    } else {
        j["exact"] = nullptr;
        if (!c.pathology.empty()) {
            j["certificate"] = {{"transition", transition_json(sys, c.pathology[0].transition)},
                                {"spurious", generated_json(sys, c.pathology[0].spurious)}};
        }
    }
    run.write("complexity.json", j);
    std::cout << "minimal generating: " << c.generating << (c.generating_optimal ? "" : " (bound)") << ", K: ";
    if (c.exact) std::cout << *c.exact << (c.exact_optimal ? "" : " (upper bound)") << "\n";
    else std::cout << "none (no exact generating rule set)\n";
    return 0;
}

int cmd_candidates(const Options& o, Run& run) {
    run.input(o.system);
    const TransitionSystem sys = system_from_json(read_json(o.system));
    const SystemIndex index(sys);
    const PipelineConfig cfg = pipeline_config(o);
    CandidatePool pool = build_candidate_pool(index, cfg.inference);
    compute_spurious(pool, index, false);
    run.write("candidates.txt", format_pool(pool));
    run.write("candidates.json", rules_json([&] {
                  std::vector<Rule> rs;
                  for (const auto& c : pool.candidates) rs.push_back(c.rule);
                  return rs;
              }(), sys.poset()));
    if (o.hasse) run.write("hasse.dot", hasse_dot(pool, sys.poset()));
    std::size_t exact = 0;
    for (const auto& c : pool.candidates) exact += c.spurious.empty();
    std::cout << pool.candidates.size() << " candidates (" << exact << " without spurious transitions)\n";
    return 0;
}

int cmd_export_lp(const Options& o, Run& run) {
    run.input(o.system);
    const TransitionSystem sys = system_from_json(read_json(o.system));
    PipelineConfig cfg = pipeline_config(o);
    cfg.solver = SolverKind::export_lp;
    const PipelineResult res = run_pipeline(sys, cfg);
    if (res.status == PipelineStatus::no_exact) {
        std::cout << "no exact generating rule set exists; nothing to export\n";
        return 1;
    }
    run.write("problem.lp", res.lp);
    std::cout << "LP written to " << (run.dir() / "problem.lp").string() << "\n";
    return 0;
}

int cmd_generate(const std::string& which, const Options& o, Run& run) {
    TransitionSystem sys = [&] {
        if (which == "grammar") {
            GrammarSpec spec;
            spec.encoding = o.encoding == "undirected" ? GrammarEncoding::undirected
                            : o.encoding == "directed" ? GrammarEncoding::directed
                                                       : GrammarEncoding::marked;
            spec.max_len = o.max_len;
            return gen_grammar(spec);
        }
        GameSpec spec;
        spec.player = o.player == "X" ? 'X' : 'O';
        spec.reach = o.reach == "modeled" ? Reachability::modeled : o.reach == "both" ? Reachability::both : Reachability::any;
        return gen_tictactoe(spec);
    }();
    run.write("system.json", system_to_json(sys).dump() + "\n");
    run.note("generator", {{"kind", which}, {"encoding", o.encoding}, {"max-len", o.max_len}, {"player", o.player},
                           {"reach", o.reach}});
    std::cout << sys.inputs().size() << " inputs, " << sys.transitions().size() << " transitions -> "
              << (run.dir() / "system.json").string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Infer graph transformation rules from transition systems"};
    app.set_version_flag("--version", RULEINFER_VERSION);
    app.set_config("--config", "", "key=value file with any of the options below");
    app.require_subcommand(1);
    Options o;

    app.add_option("--mode", o.mode, "exact or lossy")->check(CLI::IsMember({"exact", "lossy"}));
    app.add_option("--rho", o.rho, "weight of the rule count in lossy mode (3, 3/2, 0.5)");
    app.add_option("--spurious-weight", o.spurious_weight, "weight of each spurious transition in lossy mode");
    app.add_option("--timeout", o.timeout, "solver time limit in seconds (0: none)");
    app.add_option("--solver", o.solver, "bnb, greedy or export")->check(CLI::IsMember({"bnb", "greedy", "export"}));
    app.add_option("--epsilon", o.epsilon, "label weakening in common subrules: off, vertices, all")
        ->check(CLI::IsMember({"off", "vertices", "all"}));
    app.add_flag("--unconnected", o.unconnected, "let shared context grow without shared edges");
    app.add_option("--max-depth", o.max_depth, "rounds of subrule combination (0: until fixpoint)");
    app.add_option("--max-candidates", o.max_candidates, "candidate pool size limit");
    app.add_option("--max-search-nodes", o.max_search_nodes, "node budget of one common-subrule search");
    app.add_option("--run-dir", o.run_dir, "output directory (default runs/<command>-<time>)");
    app.add_flag("-q,--quiet", o.quiet, "no progress messages");
    app.add_option("--encoding", o.encoding, "grammar encoding: undirected, directed, marked")
        ->check(CLI::IsMember({"undirected", "directed", "marked"}));
    app.add_option("--max-len", o.max_len, "longest sentential form of the grammar system");
    app.add_option("--player", o.player, "tic-tac-toe player: O or X")->check(CLI::IsMember({"O", "X"}));
    app.add_option("--reach", o.reach, "tic-tac-toe states: any, modeled, both")
        ->check(CLI::IsMember({"any", "modeled", "both"}));

    auto* infer = app.add_subcommand("infer", "infer a minimal rule set")->fallthrough();
    infer->add_option("system", o.system, "transition system JSON")->required()->check(CLI::ExistingFile);
    auto* chk = app.add_subcommand("check", "test whether rules generate a system")->fallthrough();
    chk->add_option("system", o.system)->required()->check(CLI::ExistingFile);
    chk->add_option("rules", o.rules, "rule JSON (one rule or an array)")->required()->check(CLI::ExistingFile);
    chk->add_flag("--exact", o.exact, "also require no spurious transitions");
    auto* apply_cmd = app.add_subcommand("apply", "apply rules to a graph")->fallthrough();
    apply_cmd->add_option("rule", o.rule)->required()->check(CLI::ExistingFile);
    apply_cmd->add_option("graph", o.graph)->required()->check(CLI::ExistingFile);
    apply_cmd->add_option("--poset", o.poset, "poset JSON")->check(CLI::ExistingFile);
    apply_cmd->add_option("--system", o.system, "take the poset from this system")->check(CLI::ExistingFile);
    auto* cx = app.add_subcommand("complexity", "minimal generating and exact rule set sizes")->fallthrough();
    cx->add_option("system", o.system)->required()->check(CLI::ExistingFile);
    auto* cand = app.add_subcommand("candidates", "dump the candidate pool")->fallthrough();
    cand->add_option("system", o.system)->required()->check(CLI::ExistingFile);
    cand->add_flag("--hasse", o.hasse, "also write the subrule Hasse diagram (DOT)");
    auto* lp = app.add_subcommand("export-lp", "write the cover problem as an LP file")->fallthrough();
    lp->add_option("system", o.system)->required()->check(CLI::ExistingFile);
    auto* gen = app.add_subcommand("generate", "write a built-in transition system")->fallthrough();
    gen->require_subcommand(1);
    auto* gen_grammar_cmd = gen->add_subcommand("grammar", "regular grammar derivations")->fallthrough();
    auto* gen_ttt = gen->add_subcommand("tictactoe", "non-losing tic-tac-toe moves")->fallthrough();

    CLI11_PARSE(app, argc, argv);

    std::vector<std::string> args(argv, argv + argc);
    try {
        const CLI::App* sub = app.get_subcommands().front();
        std::string name = sub->get_name();
        if (sub == gen) name = "generate-" + gen->get_subcommands().front()->get_name();
        Run run(name, o, args);
        int code = 0;
        if (sub == infer) code = cmd_infer(o, run);
        else if (sub == chk) code = cmd_check(o, run);
        else if (sub == apply_cmd) code = cmd_apply(o, run);
        else if (sub == cx) code = cmd_complexity(o, run);
        else if (sub == cand) code = cmd_candidates(o, run);
        else if (sub == lp) code = cmd_export_lp(o, run);
        else if (gen_grammar_cmd->parsed()) code = cmd_generate("grammar", o, run);
        else if (gen_ttt->parsed()) code = cmd_generate("tictactoe", o, run);
        if (!o.quiet) std::cerr << "outputs in " << run.dir().string() << "\n";
        return run.finish(code);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
